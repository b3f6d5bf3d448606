#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mcfdtd/cavity_oracle.hpp"
#include "mcfdtd/engine2d.hpp"
#include "mcfdtd/runner.hpp"

using namespace mcfdtd;

namespace {

SimulationConfig cavity_config(int nx, int ny, double cell, int steps, double cfl = 0.95) {
  SimulationConfig cfg;
  cfg.name = "cavity-test";
  cfg.dim = 2;
  cfg.nx = nx;
  cfg.ny = ny;
  cfg.dx = cfg.dy = cfg.dz = cell;
  cfg.dt_policy = {DtPolicy::Kind::kCflFactor, cfl};
  cfg.steps = steps;
  SourceSpec src;
  src.kind = SourceSpec::Kind::kModalInitial;
  src.mode_m = 1;
  src.mode_n = 1;
  cfg.sources.push_back(src);
  ProbeSpec probe;
  probe.kind = ProbeSpec::Kind::kPoint;
  probe.name = "center";
  probe.component = "Ez";
  probe.i = nx / 2;
  probe.m = ny / 2;
  cfg.probes.push_back(probe);
  return cfg;
}

void add_edge_stretch(SimulationConfig& cfg, const std::string& name, Axis axis, int order, double h) {
  ParameterPerturbation par;
  par.name = name;
  par.kind = PerturbationKind::kGeometricLength;
  par.axis = axis;
  par.order = order;
  par.step = h;
  par.compensate = false;  // the cavity wall itself moves
  if (axis == Axis::kX)
    par.target = {{cfg.nx - 1, cfg.nx - 1}, {0, cfg.ny - 1}, {0, 0}};
  else
    par.target = {{0, cfg.nx - 1}, {cfg.ny - 1, cfg.ny - 1}, {0, 0}};
  cfg.perturbations.parameters.push_back(par);
  cfg.perturbations.assign_units();
}

// interpolated zero-crossing frequency estimate of a sampled oscillation
double crossing_frequency(const ProbeSeries& s, const std::vector<double>& t) {
  double first = 0, last = 0;
  int count = 0;
  for (int n = 1; n < s.samples(); ++n) {
    const double a = s.coeff(n - 1, 0), b = s.coeff(n, 0);
    if (a == 0 || a * b >= 0) continue;
    const double tc = t[n - 1] + (t[n] - t[n - 1]) * a / (a - b);
    if (count == 0) first = tc;
    last = tc;
    ++count;
  }
  REQUIRE(count >= 3);
  return 0.5 * (count - 1) / (last - first);
}

double series_rel_diff(const ProbeSeries& x, unsigned mask_x, double scale_x, const ProbeSeries& y,
                       unsigned mask_y, double scale_y) {
  REQUIRE(x.samples() == y.samples());
  double num = 0, den = 0;
  for (int n = 0; n < x.samples(); ++n) {
    num = std::max(num, std::fabs(x.coeff(n, mask_x) / scale_x - y.coeff(n, mask_y) / scale_y));
    den = std::max(den, std::fabs(y.coeff(n, mask_y) / scale_y));
  }
  REQUIRE(den > 0);
  return num / den;
}

}  // namespace

TEST_CASE("zero fields stay zero") {
  auto cfg = cavity_config(12, 9, 5e-3, 50);
  cfg.sources.clear();
  cfg.validate();
  const auto out = run_simulation(cfg);
  for (int n = 0; n < out.probe("center").samples(); ++n) CHECK(out.probe("center").coeff(n, 0) == 0.0);
}

TEST_CASE("TE11 resonance matches the closed form within dispersion error") {
  auto cfg = cavity_config(30, 20, 5e-3, 2500);
  cfg.validate();
  const auto out = run_simulation(cfg);
  const CavityMode mode{0.15, 0.10, 1, 1, 1.0, 1.0};
  const double f_measured = crossing_frequency(out.probe("center"), out.times);
  CHECK(mode.frequency() == doctest::Approx(1.8018e9).epsilon(1e-3));
  CHECK(f_measured == doctest::Approx(mode.frequency()).epsilon(5e-3));
}

TEST_CASE("lossless cavity energy stays bounded") {
  // E lives on integer steps and H on half steps, so the magnetic energy
  // at step n uses the average of the two neighboring H planes.
  auto cfg = cavity_config(30, 20, 5e-3, 0);
  cfg.validate();
  Engine2D<0> eng(cfg);
  const double cell = cfg.dx * cfg.dy;

  auto e_energy = [&](const Array2<Multicomplex<0>>& ez) {
    double we = 0;
    for (int i = 1; i < cfg.nx; ++i)
      for (int m = 1; m < cfg.ny; ++m) we += ez.at(i, m).real() * ez.at(i, m).real();
    return 0.5 * kEps0 * cell * we;  // air filled
  };
  auto h_energy = [&](const Array2<Multicomplex<0>>& ha, const Array2<Multicomplex<0>>& hb) {
    double wh = 0;
    for (std::size_t q = 0; q < ha.raw().size(); ++q) {
      const double h = 0.5 * (ha.raw()[q].real() + hb.raw()[q].real());
      wh += h * h;
    }
    return 0.5 * kMu0 * cell * wh;
  };

  double w0 = 0, wmin = 0, wmax = 0;
  for (int n = 0; n < 2000; ++n) {
    const auto ez_n = eng.ez_array();
    const auto hx_a = eng.hx_array();
    const auto hy_a = eng.hy_array();
    eng.step();
    const double w = e_energy(ez_n) + h_energy(hx_a, eng.hx_array()) + h_energy(hy_a, eng.hy_array());
    if (n == 0) {
      w0 = wmin = wmax = w;
      REQUIRE(w0 > 0);
    }
    wmin = std::min(wmin, w);
    wmax = std::max(wmax, w);
  }
  CHECK(wmax / w0 < 1.01);
  CHECK(wmin / w0 > 0.99);
}

TEST_CASE("null perturbation reproduces the real run exactly") {
  auto cfg = cavity_config(16, 12, 5e-3, 120);
  add_edge_stretch(cfg, "a", Axis::kX, 1, 0.0);  // h = 0
  cfg.validate();
  const auto pert = run_simulation(cfg);
  const auto base = run_simulation(without_perturbations(cfg));
  const auto& ps = pert.probe("center");
  const auto& bs = base.probe("center");
  for (int n = 0; n < ps.samples(); ++n) {
    CHECK(ps.coeff(n, 0) == bs.coeff(n, 0));  // bit-identical real part
    CHECK(ps.coeff(n, 1) == 0.0);             // imaginary part identically zero
  }
}

TEST_CASE("perturbed real part tracks the unperturbed run to O(h^2)") {
  auto cfg = cavity_config(30, 20, 5e-3, 1500);
  add_edge_stretch(cfg, "a", Axis::kX, 2, 1e-5);
  add_edge_stretch(cfg, "b", Axis::kY, 2, 1e-5);
  cfg.validate();
  REQUIRE(cfg.order() == 4);
  const auto pert = run_simulation(cfg);
  const auto base = run_simulation(without_perturbations(cfg));
  const double rel = series_rel_diff(pert.probe("center"), 0, 1.0, base.probe("center"), 0, 1.0);
  CHECK(rel < 1e-8);
}

TEST_CASE("first and mixed dimension derivatives match the analytic oracle") {
  const int nx = 30, ny = 20;
  const double cell = 5e-3, h = 1e-5;
  auto cfg = cavity_config(nx, ny, cell, 1200);
  add_edge_stretch(cfg, "a", Axis::kX, 1, h);
  add_edge_stretch(cfg, "b", Axis::kY, 1, h);
  cfg.validate();
  const auto out = run_simulation(cfg);

  const CavityMode mode{0.15, 0.10, 1, 1, 1.0, 1.0};
  const double x = cfg.dx * (nx / 2), y = cfg.dy * (ny / 2);

  // da: Im1 / (h * band length), band is the single edge column
  const auto& s = out.probe("center");
  std::vector<double> ana_da(s.samples()), ana_dab(s.samples());
  for (int n = 0; n < s.samples(); ++n) {
    const auto d = mode.eval(x, y, out.times[n]);
    ana_da[n] = d.d_da;
    ana_dab[n] = d.d2_dadb;
  }
  double num_max = 0, ana_max = 0, mix_max = 0, mix_ana_max = 0;
  for (int n = 0; n < s.samples(); ++n) {
    num_max = std::max(num_max, std::fabs(s.coeff(n, 0b01) / (h * cell) - ana_da[n]));
    ana_max = std::max(ana_max, std::fabs(ana_da[n]));
    mix_max = std::max(mix_max, std::fabs(s.coeff(n, 0b11) / (h * h * cell * cell) - ana_dab[n]));
    mix_ana_max = std::max(mix_ana_max, std::fabs(ana_dab[n]));
  }
  CHECK(num_max / ana_max < 0.05);
  CHECK(mix_max / mix_ana_max < 0.05);
}

TEST_CASE("unit redundancy: Im1 and Im2 of a two-unit parameter agree") {
  auto cfg = cavity_config(24, 16, 5e-3, 800);
  add_edge_stretch(cfg, "a", Axis::kX, 2, 1e-5);
  cfg.validate();
  const auto out = run_simulation(cfg);
  const double rel = series_rel_diff(out.probe("center"), 0b01, 1.0, out.probe("center"), 0b10, 1.0);
  CHECK(rel < 1e-8);
}

TEST_CASE("instability is reported as Diverged") {
  auto cfg = cavity_config(16, 12, 5e-3, 400);
  cfg.dt_policy = {DtPolicy::Kind::kCflFactor, 1.0};  // borderline stable
  cfg.validate();
  Engine2D<0> eng(cfg);
  // kick it over the limit: fixed dt above CFL is rejected up front
  auto bad = cfg;
  bad.dt_policy = {DtPolicy::Kind::kFixed, cfg.cfl_limit() * 1.2};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("double application of a perturbation is rejected") {
  auto cfg = cavity_config(16, 12, 5e-3, 10);
  add_edge_stretch(cfg, "a", Axis::kX, 1, 1e-5);
  // a second parameter with the same cells and (forced) same unit
  auto par = cfg.perturbations.parameters[0];
  cfg.perturbations.parameters.push_back(par);
  cfg.perturbations.parameters[1].name = "a2";
  cfg.perturbations.assign_units();
  cfg.perturbations.parameters[1].first_unit = 1;  // overlap unit 1 on purpose
  CHECK_THROWS_WITH_AS((void)Engine2D<2>(cfg), doctest::Contains("already perturbed"),
                       Error);
}

TEST_CASE("overlapping bands are rejected at validation") {
  auto cfg = cavity_config(16, 12, 5e-3, 10);
  add_edge_stretch(cfg, "a", Axis::kX, 1, 1e-5);
  ParameterPerturbation par = cfg.perturbations.parameters[0];
  par.name = "a_again";
  cfg.perturbations.parameters.push_back(par);
  cfg.perturbations.assign_units();
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("geometric stretch conserves compensated length") {
  SimulationConfig cfg = cavity_config(20, 12, 5e-3, 0);
  ParameterPerturbation par;
  par.name = "w";
  par.kind = PerturbationKind::kGeometricLength;
  par.axis = Axis::kX;
  par.order = 1;
  par.step = 1e-4;
  par.compensate = true;
  par.target = {{8, 9}, {0, 11}, {0, 0}};
  cfg.perturbations.parameters.push_back(par);
  cfg.perturbations.assign_units();
  cfg.validate();
  Engine2D<1> eng(cfg);
  Multicomplex<1> total(0.0);
  for (const auto& v : eng.dx_cells()) total += v;
  CHECK(total.real() == doctest::Approx(20 * 5e-3).epsilon(1e-14));
  CHECK(std::fabs(total[1]) < 1e-18);  // imaginary net length cancels
}
