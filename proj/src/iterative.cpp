#include "mcfdtd/iterative.hpp"

#include <cmath>

namespace mcfdtd {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct AffineFactor {
  Multicomplex<1> g0;   // value at the nominal point (carries the j1 step)
  double sigma = 0;     // d g / d xi
};

}  // namespace

IterativeCsd2D::IterativeCsd2D(const SimulationConfig& cfg, int max_order) : cfg_(cfg), pmax_(max_order) {
  if (cfg.dim != 2) throw ConfigError(cfg.name + ": the marching scheme is 2-D");
  if (cfg.perturbations.parameters.size() != 1 || cfg.perturbations.parameters[0].order != 1)
    throw ConfigError(cfg.name + ": the marching scheme needs exactly one order-1 perturbation");
  if (pmax_ < 0) throw ConfigError("max_order must be >= 0");
  nx_ = cfg.nx;
  ny_ = cfg.ny;
  dt_ = cfg.resolve_dt();
  step_h_ = cfg.perturbations.parameters[0].step;

  binom_.assign(pmax_ + 1, std::vector<double>(pmax_ + 1, 0.0));
  for (int p = 0; p <= pmax_; ++p) {
    binom_[p][0] = binom_[p][p] = 1.0;
    for (int q = 1; q < p; ++q) binom_[p][q] = binom_[p - 1][q - 1] + binom_[p - 1][q];
  }

  build_coefficient_derivatives();

  ez_.assign(pmax_ + 1, Array2<C1>(nx_ + 1, ny_ + 1));
  hx_.assign(pmax_ + 1, Array2<C1>(nx_ + 1, ny_));
  hy_.assign(pmax_ + 1, Array2<C1>(nx_, ny_ + 1));
  for (const auto& src : cfg_.sources)
    if (src.kind == SourceSpec::Kind::kModalInitial) init_modal(src);
}

void IterativeCsd2D::build_coefficient_derivatives() {
  const auto& par = cfg_.perturbations.parameters[0];
  const double h = par.step;
  const bool geometric = par.kind == PerturbationKind::kGeometricLength;
  if (geometric) {
    for (const auto& src : cfg_.sources)
      if (src.kind == SourceSpec::Kind::kModalInitial)
        throw ConfigError(cfg_.name +
                          ": geometric marching runs need a source-driven start (the modal shape depends on the "
                          "parameter)");
  }

  // per-cell stretch slope along the parameter axis: +1 in the band, -1 in
  // the compensating band
  auto cell_slope = [&](Axis axis, int idx) -> double {
    if (!geometric || par.axis != axis) return 0.0;
    const IndexRange& band = axis == Axis::kX ? par.target.i : par.target.m;
    if (band.contains(idx)) return 1.0;
    if (par.compensate) {
      const CellBox nb = par.neighbor_band();
      const IndexRange& minus = axis == Axis::kX ? nb.i : nb.m;
      if (minus.contains(idx)) return -1.0;
    }
    return 0.0;
  };
  auto eps_slope = [&](int i, int m) -> double {
    if (geometric) return 0.0;
    return par.target.contains(i, m, 0) ? 1.0 : 0.0;
  };

  auto dx_cell = [&](int i) -> AffineFactor {
    const double s = cell_slope(Axis::kX, i);
    return {C1(cfg_.dx) * (1.0 + C1::unit(1, s * h)), cfg_.dx * s};
  };
  auto dy_cell = [&](int m) -> AffineFactor {
    const double s = cell_slope(Axis::kY, m);
    return {C1(cfg_.dy) * (1.0 + C1::unit(1, s * h)), cfg_.dy * s};
  };
  auto eps_cell = [&](int i, int m) -> AffineFactor {
    double base = cfg_.materials.background_eps_r;
    for (const auto& region : cfg_.materials.regions)
      if (region.cells.contains(i, m, 0)) base = region.eps_r;
    const double s = eps_slope(i, m);
    return {C1(base) + C1::unit(1, s * h), s};
  };

  // derivative ladder for C / (gA * gB) with exactly one xi-dependent factor
  auto ladder = [&](double cnum, const AffineFactor& gvar, const C1& gconst) {
    std::vector<C1> out(pmax_ + 1);
    const C1 inv_g = inv(gvar.g0);
    out[0] = cnum * inv(gconst) * inv_g;
    for (int k = 1; k <= pmax_; ++k) out[k] = out[k - 1] * (-double(k) * gvar.sigma) * inv_g;
    return out;
  };

  chx_k_.assign(pmax_ + 1, std::vector<C1>(ny_));
  chy_k_.assign(pmax_ + 1, std::vector<C1>(nx_));
  for (int m = 0; m < ny_; ++m) {
    const auto lad = ladder(dt_ / kMu0, dy_cell(m), C1(1.0));
    for (int k = 0; k <= pmax_; ++k) chx_k_[k][m] = lad[k];
  }
  for (int i = 0; i < nx_; ++i) {
    const auto lad = ladder(dt_ / kMu0, dx_cell(i), C1(1.0));
    for (int k = 0; k <= pmax_; ++k) chy_k_[k][i] = lad[k];
  }

  cex_k_.assign(pmax_ + 1, Array2<C1>(nx_ + 1, ny_ + 1));
  cey_k_.assign(pmax_ + 1, Array2<C1>(nx_ + 1, ny_ + 1));
  for (int i = 1; i < nx_; ++i)
    for (int m = 1; m < ny_; ++m) {
      // node-averaged permittivity and dual spacings as affine factors
      const auto e00 = eps_cell(i - 1, m - 1), e10 = eps_cell(i, m - 1), e01 = eps_cell(i - 1, m),
                 e11 = eps_cell(i, m);
      const AffineFactor eps_node{0.25 * (e00.g0 + e10.g0 + e01.g0 + e11.g0),
                                  0.25 * (e00.sigma + e10.sigma + e01.sigma + e11.sigma)};
      const auto dxl = dx_cell(i - 1), dxr = dx_cell(i);
      const AffineFactor dxn{0.5 * (dxl.g0 + dxr.g0), 0.5 * (dxl.sigma + dxr.sigma)};
      const auto dyl = dy_cell(m - 1), dyr = dy_cell(m);
      const AffineFactor dyn{0.5 * (dyl.g0 + dyr.g0), 0.5 * (dyl.sigma + dyr.sigma)};

      std::vector<C1> lad;
      if (eps_node.sigma != 0.0) {
        lad = ladder(dt_ / kEps0, eps_node, dxn.g0);
        for (int k = 0; k <= pmax_; ++k) cex_k_[k].at(i, m) = lad[k];
        lad = ladder(dt_ / kEps0, eps_node, dyn.g0);
        for (int k = 0; k <= pmax_; ++k) cey_k_[k].at(i, m) = lad[k];
      } else {
        lad = ladder(dt_ / kEps0, dxn, eps_node.g0);
        for (int k = 0; k <= pmax_; ++k) cex_k_[k].at(i, m) = lad[k];
        lad = ladder(dt_ / kEps0, dyn, eps_node.g0);
        for (int k = 0; k <= pmax_; ++k) cey_k_[k].at(i, m) = lad[k];
      }
    }
}

void IterativeCsd2D::init_modal(const SourceSpec& src) {
  if (src.analytic_h_init)
    throw ConfigError(cfg_.name + ": marching runs start from H = 0 (set h_init to zero)");
  const auto& par = cfg_.perturbations.parameters[0];
  if (par.kind == PerturbationKind::kMaterialEps && (par.target.i.count() != nx_ || par.target.m.count() != ny_))
    throw ConfigError(cfg_.name + ": marching runs need a uniform eps perturbation");
  // the mode shape is parameter independent here, so only order 0 is seeded
  for (int i = 1; i < nx_; ++i)
    for (int m = 1; m < ny_; ++m)
      ez_[0].at(i, m) += src.amplitude * std::sin(src.mode_m * kPi * i / nx_) *
                         std::sin(src.mode_n * kPi * m / ny_);
}

void IterativeCsd2D::step() {
  for (int p = 0; p <= pmax_; ++p) {
    for (int i = 0; i <= nx_; ++i)
      for (int m = 0; m < ny_; ++m) {
        C1 acc(0.0);
        for (int q = p; q >= 0; --q)
          acc += binom_[p][q] * (chx_k_[p - q][m] * (ez_[q].at(i, m + 1) - ez_[q].at(i, m)));
        hx_[p].at(i, m) -= acc;
      }
    for (int i = 0; i < nx_; ++i)
      for (int m = 0; m <= ny_; ++m) {
        C1 acc(0.0);
        for (int q = p; q >= 0; --q)
          acc += binom_[p][q] * (chy_k_[p - q][i] * (ez_[q].at(i + 1, m) - ez_[q].at(i, m)));
        hy_[p].at(i, m) += acc;
      }
  }
  for (int p = 0; p <= pmax_; ++p) {
    for (int i = 1; i < nx_; ++i)
      for (int m = 1; m < ny_; ++m) {
        C1 acc(0.0);
        for (int q = p; q >= 0; --q) {
          acc += binom_[p][q] * (cex_k_[p - q].at(i, m) * (hy_[q].at(i, m) - hy_[q].at(i - 1, m)) -
                                 cey_k_[p - q].at(i, m) * (hx_[q].at(i, m) - hx_[q].at(i, m - 1)));
        }
        ez_[p].at(i, m) += acc;
      }
  }
  ++step_;
  const double t = step_ * dt_;
  for (const auto& src : cfg_.sources) {
    if (src.kind != SourceSpec::Kind::kGaussianEz) continue;
    const double g = src.amplitude * std::exp(-std::pow((t - src.delay) / src.half_width, 2));
    for (int i = src.cells.i.lo; i <= src.cells.i.hi; ++i)
      for (int m = src.cells.m.lo; m <= src.cells.m.hi; ++m) ez_[0].at(i, m) += g;
  }
  if ((step_ & 63) == 0) {
    for (const auto& v : ez_[0].raw())
      if (!(std::fabs(v.real()) < cfg_.divergence_limit))
        throw DivergedError(cfg_.name + ": |Re Ez| exceeded the divergence limit at step " +
                            std::to_string(step_));
  }
}

IterativeCsd2D::C1 IterativeCsd2D::probe_value(int p, const ProbeSpec& probe) const {
  if (probe.kind != ProbeSpec::Kind::kPoint || probe.component != "Ez")
    throw Error("marching runs support Ez point probes only");
  return ez_[p].at(probe.i, probe.m);
}

const ProbeSeries& IterativeRunOutput::probe(int order, const std::string& probe_name) const {
  for (const auto& p : by_order.at(order))
    if (p.name == probe_name) return p;
  throw Error("iterative run has no probe '" + probe_name + "'");
}

std::vector<double> IterativeRunOutput::derivative_series(int order, const std::string& name) const {
  std::vector<double> out;
  if (order == 0) {
    const auto& s = probe(0, name);
    out.resize(s.samples());
    for (int n = 0; n < s.samples(); ++n) out[n] = s.coeff(n, 0);
    return out;
  }
  const auto& s = probe(order - 1, name);
  out.resize(s.samples());
  for (int n = 0; n < s.samples(); ++n) out[n] = s.coeff(n, 1) / step_h;
  return out;
}

IterativeRunOutput run_iterative_csd(const SimulationConfig& cfg, int max_order) {
  IterativeCsd2D eng(cfg, max_order);
  IterativeRunOutput out;
  out.name = cfg.name;
  out.config_hash = cfg.config_hash;
  out.max_order = max_order;
  out.steps = cfg.steps;
  out.dt = eng.dt();
  out.step_h = cfg.perturbations.parameters[0].step;
  out.by_order.assign(max_order + 1, {});
  for (int p = 0; p <= max_order; ++p) {
    out.by_order[p].resize(cfg.probes.size());
    for (std::size_t q = 0; q < cfg.probes.size(); ++q) {
      out.by_order[p][q].name = cfg.probes[q].name;
      out.by_order[p][q].ncoeff = 2;
    }
  }
  const auto record = [&]() {
    out.times.push_back(eng.time());
    for (int p = 0; p <= max_order; ++p)
      for (std::size_t q = 0; q < cfg.probes.size(); ++q) {
        const auto v = eng.probe_value(p, cfg.probes[q]);
        out.by_order[p][q].data.push_back(v[0]);
        out.by_order[p][q].data.push_back(v[1]);
      }
  };
  record();
  for (int n = 1; n <= cfg.steps; ++n) {
    eng.step();
    record();
  }
  return out;
}

}  // namespace mcfdtd
