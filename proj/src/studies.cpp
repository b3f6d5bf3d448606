#include "mcfdtd/studies.hpp"

#include <algorithm>
#include <cmath>

#include "mcfdtd/cavity_oracle.hpp"
#include "mcfdtd/engine2d.hpp"
#include "mcfdtd/extraction.hpp"
#include "mcfdtd/linf.hpp"
#include "mcfdtd/oracles.hpp"
#include "mcfdtd/runner.hpp"
#include "mcfdtd/spectrum.hpp"

namespace mcfdtd {

using nlohmann::json;

// ----------------------------------------------------------------- stub --

StubStudyConfig StubStudyConfig::from_json(const json& study) {
  StubStudyConfig cfg;
  const json& j = study.contains("study") ? study.at("study") : study;
  cfg.l0 = j.value("l0", 0.125);
  cfg.lambda = j.value("lambda", 1.0);
  for (const auto& h : j.value("h_first", json::array())) cfg.h_first.push_back(h.get<double>());
  for (const auto& h : j.value("h_second", json::array())) cfg.h_second.push_back(h.get<double>());
  if (cfg.h_first.empty() || cfg.h_second.empty())
    throw ConfigError("stub study needs h_first and h_second lists");
  return cfg;
}

StubStudyResult run_stub_study(const StubStudyConfig& cfg) {
  const oracles::StubSusceptance stub{cfg.lambda};
  const double d1 = oracles::stub_first_derivative(cfg.l0, cfg.lambda);
  const double d2 = oracles::stub_second_derivative(cfg.l0, cfg.lambda);

  StubStudyResult out;
  for (SweepMethod m :
       {SweepMethod::kCsd, SweepMethod::kForward, SweepMethod::kBackward, SweepMethod::kCentered})
    out.first_order.push_back({m, error_sweep(stub, cfg.l0, d1, m, cfg.h_first)});
  for (SweepMethod m : {SweepMethod::kMcsd, SweepMethod::kCenteredSecond})
    out.second_order.push_back({m, error_sweep(stub, cfg.l0, d2, m, cfg.h_second)});
  return out;
}

// --------------------------------------------------------------- cavity --

CavityStudyConfig CavityStudyConfig::from_json(const json& study) {
  const json& j = study.at("cavity");
  CavityStudyConfig cfg;
  cfg.mode_m = j.at("mode").at(0).get<int>();
  cfg.mode_n = j.at("mode").at(1).get<int>();
  cfg.width = j.at("width_m").get<double>();
  cfg.height = j.at("height_m").get<double>();
  for (const auto& h : j.value("h_sweep", json::array())) cfg.h_sweep.push_back(h.get<double>());
  cfg.cfd_h = j.value("cfd_h", 1e-4);
  for (const auto& d : j.value("mesh_sweep_m", json::array())) cfg.mesh_sweep.push_back(d.get<double>());
  cfg.mcsd_h = j.value("mcsd_h", 1e-5);
  if (j.contains("fidelity")) {
    cfg.fidelity_orders = j.at("fidelity").value("orders_per_parameter", 2);
    cfg.fidelity_step = j.at("fidelity").value("step", 1e-5);
  }
  return cfg;
}

namespace {

SimulationConfig with_cavity_steps(SimulationConfig cfg, double h) {
  for (auto& par : cfg.perturbations.parameters) par.step = h;
  return cfg;
}

CavityMode cavity_mode_of(const SimulationConfig& cfg, const CavityStudyConfig& study) {
  CavityMode mode;
  mode.a = study.width;
  mode.b = study.height;
  mode.m = study.mode_m;
  mode.n = study.mode_n;
  mode.e0 = 1.0;
  mode.eps_r = cfg.materials.background_eps_r;
  return mode;
}

// oracle over the interior grid nodes plus its guarded peak over the run
struct OracleField {
  CavityDerivTable table;
  std::vector<double> times;
  double peak = 0;

  OracleField(const SimulationConfig& cfg, const CavityStudyConfig& study, CavityDerivTable::Component comp)
      : table(cavity_mode_of(cfg, study), comp, node_positions(cfg.nx, cfg.dx), node_positions(cfg.ny, cfg.dy)) {
    const double dt = cfg.resolve_dt();
    times.resize(cfg.steps + 1);
    for (int n = 0; n <= cfg.steps; ++n) times[n] = n * dt;
    for (int n = 0; n <= cfg.steps; ++n) {
      table.set_time(times[n]);
      for (int i = 1; i < cfg.nx; ++i)
        for (int m = 1; m < cfg.ny; ++m) peak = std::max(peak, std::fabs(table.value(i, m)));
    }
  }

  static std::vector<double> node_positions(int n, double delta) {
    std::vector<double> xs(n + 1);
    for (int i = 0; i <= n; ++i) xs[i] = i * delta;
    return xs;
  }
};

}  // namespace

double cavity_mixed_linf_mcsd(const SimulationConfig& base, const CavityStudyConfig& study, double h) {
  const SimulationConfig cfg = with_cavity_steps(base, h);
  OracleField oracle(cfg, study, CavityDerivTable::Component::kDaDb);
  const auto idx = cfg.perturbations.derivative_index({{"a", 1}, {"b", 1}}, cfg.geometric_band_lengths());
  const double divisor = idx.step_divisor * idx.length_scale;

  LinfAccumulator acc(oracle.peak);
  StepObserver obs = [&](int sample, double, const Ez2DView& ez) {
    oracle.table.set_time(oracle.times[sample]);
    for (int i = 1; i < ez.nx(); ++i)
      for (int m = 1; m < ez.ny(); ++m)
        acc.add(ez.ez_coeff(i, m, idx.mask.mask) / divisor, oracle.table.value(i, m));
  };
  (void)run_simulation(cfg, nullptr, &obs);
  return acc.value();
}

double cavity_mixed_linf_cfd(const SimulationConfig& base, const CavityStudyConfig& study, double h) {
  OracleField oracle(base, study, CavityDerivTable::Component::kDaDb);
  const double la = base.geometric_band_length(*base.perturbations.find("a"));
  const double lb = base.geometric_band_length(*base.perturbations.find("b"));
  const double da = h * la, db = h * lb;

  const RealShifts pp = {{"a", +h}, {"b", +h}};
  const RealShifts pm = {{"a", +h}, {"b", -h}};
  const RealShifts mp = {{"a", -h}, {"b", +h}};
  const RealShifts mm = {{"a", -h}, {"b", -h}};
  Engine2D<0> e_pp(base, &pp), e_pm(base, &pm), e_mp(base, &mp), e_mm(base, &mm);

  LinfAccumulator acc(oracle.peak);
  const auto accumulate = [&](int sample) {
    oracle.table.set_time(oracle.times[sample]);
    for (int i = 1; i < base.nx; ++i)
      for (int m = 1; m < base.ny; ++m) {
        const double num = (e_pp.ez(i, m).real() - e_pm.ez(i, m).real() - e_mp.ez(i, m).real() +
                            e_mm.ez(i, m).real()) /
                           (4.0 * da * db);
        acc.add(num, oracle.table.value(i, m));
      }
  };
  accumulate(0);
  for (int n = 1; n <= base.steps; ++n) {
    e_pp.step();
    e_pm.step();
    e_mp.step();
    e_mm.step();
    accumulate(n);
  }
  return acc.value();
}

CavityTraceResult run_cavity_trace(const SimulationConfig& cfg, const CavityStudyConfig& study) {
  const auto out = run_simulation(cfg);
  const auto idx = cfg.perturbations.derivative_index({{"a", 1}, {"b", 1}}, cfg.geometric_band_lengths());
  const double divisor = idx.step_divisor * idx.length_scale;
  const auto& probe_spec = cfg.probes.at(0);
  const CavityMode mode = cavity_mode_of(cfg, study);
  const double x = probe_spec.i * cfg.dx, y = probe_spec.m * cfg.dy;

  CavityTraceResult trace;
  trace.times = out.times;
  const auto& s = out.probe(probe_spec.name);
  for (int n = 0; n < s.samples(); ++n) {
    trace.re_ez.push_back(s.coeff(n, 0));
    trace.d2_dadb.push_back(s.coeff(n, idx.mask.mask) / divisor);
    const auto d = mode.eval(x, y, out.times[n]);
    trace.ez_analytic.push_back(d.ez);
    trace.d2_dadb_analytic.push_back(d.d2_dadb);
  }
  return trace;
}

CavityErrorSweepResult run_cavity_error_sweep(const SimulationConfig& cfg, const CavityStudyConfig& study) {
  CavityErrorSweepResult out;
  for (double h : study.h_sweep) {
    out.h.push_back(h);
    out.mcsd_err.push_back(cavity_mixed_linf_mcsd(cfg, study, h));
    out.cfd_err.push_back(cavity_mixed_linf_cfd(cfg, study, h));
  }
  return out;
}

CavityMeshSweepResult run_cavity_mesh_sweep(const SimulationConfig& base, const CavityStudyConfig& study) {
  CavityMeshSweepResult out;
  const double t_window = base.steps * base.resolve_dt();
  for (double delta : study.mesh_sweep) {
    SimulationConfig cfg = base;
    cfg.nx = int(std::lround(study.width / delta));
    cfg.ny = int(std::lround(study.height / delta));
    cfg.dx = cfg.dy = delta;
    cfg.probes[0].i = cfg.nx / 2;
    cfg.probes[0].m = cfg.ny / 2;
    for (auto& par : cfg.perturbations.parameters) {
      const bool is_a = par.axis == Axis::kX;
      par.target = is_a ? CellBox{{cfg.nx - 1, cfg.nx - 1}, {0, cfg.ny - 1}, {0, 0}}
                        : CellBox{{0, cfg.nx - 1}, {cfg.ny - 1, cfg.ny - 1}, {0, 0}};
      par.step = study.mcsd_h;
    }
    cfg.steps = int(std::lround(t_window / cfg.resolve_dt()));
    cfg.validate();

    out.delta.push_back(delta);
    out.mcsd_err.push_back(cavity_mixed_linf_mcsd(cfg, study, study.mcsd_h));
    out.cfd_err.push_back(cavity_mixed_linf_cfd(cfg, study, study.cfd_h));

    // dispersion error of the raw field from the same run's real part
    OracleField oracle(cfg, study, CavityDerivTable::Component::kEz);
    LinfAccumulator acc(oracle.peak);
    StepObserver obs = [&](int sample, double, const Ez2DView& ez) {
      oracle.table.set_time(oracle.times[sample]);
      for (int i = 1; i < ez.nx(); ++i)
        for (int m = 1; m < ez.ny(); ++m) acc.add(ez.ez_coeff(i, m, 0), oracle.table.value(i, m));
    };
    (void)run_simulation(without_perturbations(cfg), nullptr, &obs);
    out.field_err.push_back(acc.value());
  }
  return out;
}

CavityFidelityResult run_cavity_fidelity(const SimulationConfig& base, const CavityStudyConfig& study) {
  SimulationConfig cfg = base;
  for (auto& par : cfg.perturbations.parameters) {
    par.order = study.fidelity_orders;
    par.step = study.fidelity_step;
  }
  cfg.perturbations.assign_units();
  cfg.validate();

  const auto pert = run_simulation(cfg);
  const auto plain = run_simulation(without_perturbations(cfg));
  const auto& ps = pert.probe(cfg.probes[0].name);
  const auto& bs = plain.probe(cfg.probes[0].name);

  CavityFidelityResult out;
  out.total_order = cfg.order();
  double num = 0, den = 0;
  for (int n = 0; n < ps.samples(); ++n) {
    num = std::max(num, std::fabs(ps.coeff(n, 0) - bs.coeff(n, 0)));
    den = std::max(den, std::fabs(bs.coeff(n, 0)));
  }
  out.max_rel_diff = num / den;
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t q = 0; q < x.size(); ++q) {
    if (!(x[q] > 0) || !(err[q] > 0)) continue;
    const double lx = std::log10(x[q]), ly = std::log10(err[q]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw Error("loglog_slope needs at least two positive points");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// --------------------------------------------------------------- filter --

FilterStudyConfig FilterStudyConfig::from_json(const json& study) {
  const json& j = study.at("filter");
  FilterStudyConfig cfg;
  for (const auto& p : j.at("incident_pec_patches")) {
    PecPatch patch;
    patch.plane_k = p.at("plane_k").get<int>();
    patch.i = {p.at("i").at(0).get<int>(), p.at("i").at(1).get<int>()};
    patch.m = {p.at("m").at(0).get<int>(), p.at("m").at(1).get<int>()};
    cfg.incident_pec_patches.push_back(patch);
  }
  cfg.incident_port = j.value("incident_port", "port1");
  for (const auto& h : j.at("h_values")) cfg.h_values.push_back(h.get<double>());
  cfg.h_reference = j.value("h_reference", 1e-5);
  cfg.f_lo = j.at("band_hz").at(0).get<double>();
  cfg.f_hi = j.at("band_hz").at(1).get<double>();
  cfg.df = j.at("df_hz").get<double>();
  cfg.eval_lo = j.at("eval_band_hz").at(0).get<double>();
  cfg.eval_hi = j.at("eval_band_hz").at(1).get<double>();
  cfg.incident_floor_rel = j.value("incident_floor_rel", 1e-4);
  return cfg;
}

namespace {

SimulationConfig incident_config(const SimulationConfig& device, const std::vector<PecPatch>& patches) {
  SimulationConfig cfg = without_perturbations(device);
  cfg.name = device.name + "-incident";
  cfg.pec_patches = patches;
  cfg.validate();
  return cfg;
}

std::complex<double> spectral_complex(const SpectralValue& v, unsigned mask, double divisor) {
  return {v.re[mask] / divisor, v.im[mask] / divisor};
}

double spread_of(const std::vector<std::vector<std::complex<double>>>& by_h,
                 const std::vector<std::complex<double>>& ref, const std::vector<char>& in_band) {
  double worst = 0, scale = 0;
  for (std::size_t q = 0; q < ref.size(); ++q)
    if (in_band[q]) scale = std::max(scale, std::abs(ref[q]));
  if (!(scale > 0)) throw Error("derivative spread: reference is zero over the band");
  for (std::size_t a = 0; a < by_h.size(); ++a)
    for (std::size_t b = a + 1; b < by_h.size(); ++b)
      for (std::size_t q = 0; q < ref.size(); ++q)
        if (in_band[q]) worst = std::max(worst, std::abs(by_h[a][q] - by_h[b][q]));
  return worst / scale;
}

}  // namespace

FilterStudyResult run_filter_study(const SimulationConfig& device, const FilterStudyConfig& study) {
  FilterStudyResult out;
  out.freqs = frequency_grid(study.f_lo, study.f_hi, study.df);
  out.h_values = study.h_values;

  const SimulationConfig inc_cfg = incident_config(device, study.incident_pec_patches);
  const auto inc_run = run_simulation(inc_cfg);

  const auto plain_cfg = without_perturbations(device);
  const auto plain_run = run_simulation(plain_cfg);
  const auto plain_sp = extract_sparams(inc_run, study.incident_port, plain_run, "port1", "port2", out.freqs,
                                        study.incident_floor_rel);

  out.valid = plain_sp.valid;
  out.in_eval_band.resize(out.freqs.size());
  for (std::size_t q = 0; q < out.freqs.size(); ++q)
    out.in_eval_band[q] = out.valid[q] && out.freqs[q] >= study.eval_lo && out.freqs[q] <= study.eval_hi;

  const double lw1 = device.geometric_band_length(*device.perturbations.find("w1"));
  const double lw2 = device.geometric_band_length(*device.perturbations.find("w2"));

  for (std::size_t q = 0; q < out.freqs.size(); ++q) {
    if (!out.valid[q]) {
      out.s11_db_plain.push_back(0);
      out.s21_db_plain.push_back(0);
      continue;
    }
    out.s11_db_plain.push_back(plain_sp.s11[q].magnitude_db().real());
    out.s21_db_plain.push_back(plain_sp.s21[q].magnitude_db().real());
    if (out.in_eval_band[q]) {
      const double p = std::pow(plain_sp.s11[q].magnitude().real(), 2) +
                       std::pow(plain_sp.s21[q].magnitude().real(), 2);
      out.max_passivity_excess = std::max(out.max_passivity_excess, p - 1.0);
    }
  }

  const auto d1_index = device.perturbations.derivative_index({{"w1", 1}}, device.geometric_band_lengths());
  const auto d2_index =
      device.perturbations.derivative_index({{"w1", 1}, {"w2", 1}}, device.geometric_band_lengths());

  for (double h : study.h_values) {
    // multicomplex route: one order-2 run per h
    SimulationConfig cfg = device;
    for (auto& par : cfg.perturbations.parameters) par.step = h;
    const auto run = run_simulation(cfg);
    const auto sp = extract_sparams(inc_run, study.incident_port, run, "port1", "port2", out.freqs,
                                    study.incident_floor_rel);
    std::vector<std::complex<double>> d1(out.freqs.size()), d2(out.freqs.size());
    for (std::size_t q = 0; q < out.freqs.size(); ++q) {
      if (!out.valid[q]) continue;
      d1[q] = spectral_complex(sp.s21[q], d1_index.mask.mask, h * lw1);
      d2[q] = spectral_complex(sp.s21[q], d2_index.mask.mask, h * h * lw1 * lw2);
    }
    out.mcsd_d1.push_back(std::move(d1));
    out.mcsd_d2.push_back(std::move(d2));

    if (h == study.h_reference) {
      double gap = 0;
      for (std::size_t q = 0; q < out.freqs.size(); ++q) {
        if (!out.valid[q]) {
          out.s11_db.push_back(0);
          out.s21_db.push_back(0);
          continue;
        }
        out.s11_db.push_back(sp.s11[q].magnitude_db().real());
        out.s21_db.push_back(sp.s21[q].magnitude_db().real());
        if (out.in_eval_band[q])
          gap = std::max(gap, std::fabs(out.s21_db[q] - out.s21_db_plain[q]));
      }
      out.max_nominal_db_gap = gap;
    }

    // centered-difference route at the same h
    auto sparams_at = [&](double sw1, double sw2) {
      const RealShifts shifts = {{"w1", sw1}, {"w2", sw2}};
      const auto r = run_simulation(device, &shifts);
      return extract_sparams(inc_run, study.incident_port, r, "port1", "port2", out.freqs,
                             study.incident_floor_rel);
    };
    const auto sp_p0 = sparams_at(+h, 0), sp_m0 = sparams_at(-h, 0);
    const auto sp_pp = sparams_at(+h, +h), sp_pm = sparams_at(+h, -h);
    const auto sp_mp = sparams_at(-h, +h), sp_mm = sparams_at(-h, -h);
    std::vector<std::complex<double>> c1(out.freqs.size()), c2(out.freqs.size());
    for (std::size_t q = 0; q < out.freqs.size(); ++q) {
      if (!out.valid[q]) continue;
      auto s21 = [&](const SParams& sp_of) {
        return std::complex<double>(sp_of.s21[q].re.real(), sp_of.s21[q].im.real());
      };
      c1[q] = (s21(sp_p0) - s21(sp_m0)) / (2.0 * h * lw1);
      c2[q] = (s21(sp_pp) - s21(sp_pm) - s21(sp_mp) + s21(sp_mm)) / (4.0 * h * h * lw1 * lw2);
    }
    out.cfd_d1.push_back(std::move(c1));
    out.cfd_d2.push_back(std::move(c2));
  }

  const std::size_t ref_idx =
      std::find(out.h_values.begin(), out.h_values.end(), study.h_reference) - out.h_values.begin();
  if (ref_idx >= out.h_values.size()) throw ConfigError("h_reference must be one of h_values");
  out.mcsd_spread_d1 = spread_of(out.mcsd_d1, out.mcsd_d1[ref_idx], out.in_eval_band);
  out.cfd_spread_d1 = spread_of(out.cfd_d1, out.cfd_d1[ref_idx], out.in_eval_band);
  out.mcsd_spread_d2 = spread_of(out.mcsd_d2, out.mcsd_d2[ref_idx], out.in_eval_band);
  out.cfd_spread_d2 = spread_of(out.cfd_d2, out.cfd_d2[ref_idx], out.in_eval_band);
  return out;
}

// --------------------------------------------------------------- taylor --

TaylorStudyConfig TaylorStudyConfig::from_json(const json& study) {
  const json& j = study.at("taylor");
  TaylorStudyConfig cfg;
  for (const auto& p : j.at("incident_pec_patches")) {
    PecPatch patch;
    patch.plane_k = p.at("plane_k").get<int>();
    patch.i = {p.at("i").at(0).get<int>(), p.at("i").at(1).get<int>()};
    patch.m = {p.at("m").at(0).get<int>(), p.at("m").at(1).get<int>()};
    cfg.incident_pec_patches.push_back(patch);
  }
  cfg.incident_port = j.value("incident_port", "port1");
  cfg.f_lo = j.at("band_hz").at(0).get<double>();
  cfg.f_hi = j.at("band_hz").at(1).get<double>();
  cfg.df = j.at("df_hz").get<double>();
  cfg.f_eval = j.at("f_eval_hz").get<double>();
  for (const auto& d : j.at("d_factors")) cfg.d_factors.push_back(d.get<double>());
  cfg.band_abs = j.value("band_abs_s21", 0.02);
  for (const auto& o : j.at("orders")) cfg.orders.push_back(o.get<int>());
  return cfg;
}

TaylorStudyResult run_taylor_study(const SimulationConfig& device, const TaylorStudyConfig& study) {
  if (device.perturbations.parameters.size() != 1)
    throw ConfigError("taylor study expects a single thickness parameter");
  const auto& par = device.perturbations.parameters[0];

  TaylorStudyResult out;
  out.f_eval = study.f_eval;

  // nominal thickness from the dielectric region extent along z
  double d0 = 0;
  for (const auto& region : device.materials.regions)
    if (region.eps_r > 1.0) d0 = std::max(d0, device.dz * region.cells.k.count());
  if (!(d0 > 0)) throw ConfigError("taylor study: no dielectric region to measure the thickness from");
  out.d0 = d0;

  const std::vector<double> freqs = {study.f_eval};
  const SimulationConfig inc_cfg = incident_config(device, study.incident_pec_patches);
  const auto inc_run = run_simulation(inc_cfg);

  // derivatives of |S21|(f_eval) w.r.t. the absolute thickness
  const auto run = run_simulation(device);
  const auto sp = extract_sparams(inc_run, study.incident_port, run, "port1", "port2", freqs, 1e-6);
  const DynMc mag = sp.s21[0].magnitude();
  const double band_len = device.geometric_band_length(par);
  const int max_order = *std::max_element(study.orders.begin(), study.orders.end());
  if (max_order > par.order)
    throw ConfigError("taylor study: requested order exceeds the declared perturbation order");
  out.derivatives.push_back(mag.real());
  for (int k = 1; k <= max_order; ++k) {
    std::vector<DerivativeTerm> terms = {{par.name, k}};
    const auto idx = device.perturbations.derivative_index(terms, device.geometric_band_lengths());
    out.derivatives.push_back(mag.imag(idx.mask) / (idx.step_divisor * idx.length_scale));
  }

  // full-wave references across the thickness sweep
  for (double factor : study.d_factors) {
    const double shift = (factor - 1.0) * d0 / band_len;  // fractional band stretch
    const RealShifts shifts = {{par.name, shift}};
    const auto ref_run = run_simulation(device, &shifts);
    const auto ref_sp = extract_sparams(inc_run, study.incident_port, ref_run, "port1", "port2", freqs, 1e-6);
    out.d_values.push_back(factor * d0);
    out.fullwave_s21.push_back(ref_sp.s21[0].magnitude().real());
  }

  std::vector<std::pair<double, double>> reference;
  for (std::size_t q = 0; q < out.d_values.size(); ++q)
    reference.push_back({out.d_values[q], out.fullwave_s21[q]});

  for (int order : study.orders) {
    const auto model = TaylorModel1D::from_derivatives(
        d0, std::span<const double>(out.derivatives.data(), order + 1));
    out.models.push_back(model);
    out.ranges.push_back(effective_range(model, reference, study.band_abs));
    std::vector<double> curve;
    for (double d : out.d_values) curve.push_back(model.evaluate(d));
    out.model_s21.push_back(std::move(curve));
  }
  return out;
}

// ---------------------------------------------------------------- bench --

BenchStudyConfig BenchStudyConfig::from_json(const json& study) {
  const json& j = study.at("bench");
  BenchStudyConfig cfg;
  for (const auto& o : j.at("orders")) cfg.orders.push_back(o.get<int>());
  const json& cells = j.at("eps_cells");
  cfg.eps_cells.i = {cells.at("i").at(0).get<int>(), cells.at("i").at(1).get<int>()};
  cfg.eps_cells.m = {cells.at("m").at(0).get<int>(), cells.at("m").at(1).get<int>()};
  cfg.eps_cells.k = {cells.at("k").at(0).get<int>(), cells.at("k").at(1).get<int>()};
  cfg.step = j.value("step", 1e-5);
  return cfg;
}

BenchResult run_bench_study(const SimulationConfig& base, const BenchStudyConfig& study) {
  BenchResult out;
  const OpCounts* base_counts = nullptr;
  for (int order : study.orders) {
    SimulationConfig cfg = without_perturbations(base);
    if (order > 0) {
      ParameterPerturbation par;
      par.name = "eps";
      par.kind = PerturbationKind::kMaterialEps;
      par.order = order;
      par.step = study.step;
      par.target = study.eps_cells;
      cfg.perturbations.parameters.push_back(par);
      cfg.perturbations.assign_units();
    }
    cfg.validate();
    const auto run = run_simulation(cfg);

    BenchRow row;
    row.order = order;
    row.counts = run.counts;
    out.rows.push_back(row);
  }
  for (auto& row : out.rows) {
    if (row.order == 0) base_counts = &row.counts;
  }
  if (!base_counts) throw ConfigError("bench study needs order 0 in the order list");
  for (auto& row : out.rows) {
    row.add_ratio = double(row.counts.add_sub) / double(base_counts->add_sub);
    row.mult_ratio = double(row.counts.mult) / double(base_counts->mult);
    row.mult_flat_ratio = double(row.counts.mult_flat) / double(base_counts->mult_flat);
    row.claimed_add = std::pow(2.0, row.order);
    row.claimed_mult = std::pow(3.0, row.order);
  }
  return out;
}

}  // namespace mcfdtd
