#include "mcfdtd/dynmc.hpp"
#include "mcfdtd/engine2d.hpp"
#include "mcfdtd/runner.hpp"

namespace mcfdtd::detail {

namespace {

template <int N>
class Ez2DViewImpl final : public Ez2DView {
 public:
  explicit Ez2DViewImpl(const Engine2D<N>& eng) : eng_(eng) {}
  int nx() const override { return eng_.nx(); }
  int ny() const override { return eng_.ny(); }
  unsigned ncoeff() const override { return Multicomplex<N>::size; }
  double ez_coeff(int i, int m, unsigned mask) const override { return eng_.ez(i, m)[mask]; }

 private:
  const Engine2D<N>& eng_;
};

template <int N>
RunOutput run_2d(const SimulationConfig& cfg, const RealShifts* shifts, const StepObserver* observer) {
  Engine2D<N> eng(cfg, shifts);
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

  Ez2DViewImpl<N> view(eng);
  const auto record = [&]() {
    out.times.push_back(eng.time());
    for (std::size_t p = 0; p < cfg.probes.size(); ++p) {
      const auto v = eng.probe_value(cfg.probes[p]);
      for (unsigned s = 0; s < ncoeff; ++s) out.probes[p].data.push_back(v[s]);
    }
  };

  const OpCounts before = op_counts();
  record();
  if (observer) (*observer)(0, 0.0, view);
  for (int n = 1; n <= cfg.steps; ++n) {
    eng.step();
    record();
    if (observer) (*observer)(n, eng.time(), view);
  }
  out.counts = op_counts() - before;
  return out;
}

}  // namespace

RunOutput run_simulation_2d(const SimulationConfig& cfg, const RealShifts* shifts, const StepObserver* observer,
                            int order) {
  return dispatch_order(order, [&](auto nc) {
    constexpr int N = decltype(nc)::value;
    return run_2d<N>(cfg, shifts, observer);
  });
}

}  // namespace mcfdtd::detail
