#include "mcfdtd/runner.hpp"

#include <algorithm>

namespace mcfdtd {

const ProbeSeries& RunOutput::probe(const std::string& probe_name) const {
  for (const auto& p : probes)
    if (p.name == probe_name) return p;
  throw Error("run '" + name + "' has no probe '" + probe_name + "'");
}

SimulationConfig without_perturbations(SimulationConfig cfg) {
  cfg.perturbations.parameters.clear();
  cfg.derivatives.clear();
  return cfg;
}

RealShifts all_real_shifts(const SimulationConfig& cfg, double scale) {
  RealShifts shifts;
  for (const auto& par : cfg.perturbations.parameters) shifts[par.name] = scale * par.step;
  return shifts;
}

RunOutput run_simulation(const SimulationConfig& cfg, const RealShifts* shifts, const StepObserver* observer) {
  int order = cfg.perturbations.total_order();
  if (shifts) {
    const bool all_shifted = std::all_of(cfg.perturbations.parameters.begin(), cfg.perturbations.parameters.end(),
                                         [&](const auto& p) { return shifts->count(p.name) != 0; });
    if (all_shifted) order = 0;
  }
  if (cfg.dim == 2) return detail::run_simulation_2d(cfg, shifts, observer, order);
  return detail::run_simulation_3d(cfg, shifts, observer, order);
}

}  // namespace mcfdtd
