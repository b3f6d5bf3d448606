#include "mcfdtd/dynmc.hpp"
#include "mcfdtd/engine3d.hpp"
#include "mcfdtd/runner.hpp"

namespace mcfdtd::detail {

namespace {

template <int N>
RunOutput run_3d(const SimulationConfig& cfg, const RealShifts* shifts) {
  Engine3D<N> eng(cfg, shifts);
  constexpr unsigned ncoeff = Multicomplex<N>::size;

  RunOutput out;
  out.name = cfg.name;
  out.config_hash = cfg.config_hash;
  out.order = N;
  out.ncoeff = ncoeff;
  out.steps = cfg.steps;
  out.dt = eng.dt();
  out.times.reserve(cfg.steps + 1);
  out.probes.resize(cfg.probes.size());
  for (std::size_t p = 0; p < cfg.probes.size(); ++p) {
    out.probes[p].name = cfg.probes[p].name;
    out.probes[p].ncoeff = ncoeff;
    out.probes[p].data.reserve(std::size_t(cfg.steps + 1) * ncoeff);
  }

  const auto record = [&]() {
    out.times.push_back(eng.time());
    for (std::size_t p = 0; p < cfg.probes.size(); ++p) {
      const auto v = eng.probe_value(cfg.probes[p]);
      for (unsigned s = 0; s < ncoeff; ++s) out.probes[p].data.push_back(v[s]);
    }
  };

  const OpCounts before = op_counts();
  record();
  for (int n = 1; n <= cfg.steps; ++n) {
    eng.step();
    record();
  }
  out.counts = op_counts() - before;
  return out;
}

}  // namespace

RunOutput run_simulation_3d(const SimulationConfig& cfg, const RealShifts* shifts, const StepObserver* observer,
                            int order) {
  if (observer) throw Error("field observers are supported on 2-D runs only");
  return dispatch_order(order, [&](auto nc) {
    constexpr int N = decltype(nc)::value;
    return run_3d<N>(cfg, shifts);
  });
}

}  // namespace mcfdtd::detail
