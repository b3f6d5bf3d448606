#pragma once

// Drives one simulation from a config: builds the right-order engine,
// records probes every step, and returns the (multicomplex) series in a
// runtime-typed form for extraction and post-processing.

#include <functional>
#include <string>
#include <vector>

#include "mcfdtd/multicomplex.hpp"
#include "mcfdtd/simconfig.hpp"

namespace mcfdtd {

struct ProbeSeries {
  std::string name;
  unsigned ncoeff = 1;
  std::vector<double> data;  // samples * ncoeff, mask-ascending within a sample

  int samples() const { return int(data.size() / ncoeff); }
  double coeff(int sample, unsigned mask) const { return data[std::size_t(sample) * ncoeff + mask]; }
};

struct RunOutput {
  std::string name;
  std::string config_hash;
  int order = 0;
  unsigned ncoeff = 1;
  int steps = 0;
  double dt = 0;
  std::vector<double> times;  // samples() entries; sample 0 is the initial state
  std::vector<ProbeSeries> probes;
  OpCounts counts;  // scalar-op tally over the stepping loop

  const ProbeSeries& probe(const std::string& probe_name) const;
};

// Per-step read access to the full Ez plane of a 2-D run, independent of
// the compile-time order.
class Ez2DView {
 public:
  virtual ~Ez2DView() = default;
  virtual int nx() const = 0;
  virtual int ny() const = 0;
  virtual unsigned ncoeff() const = 0;
  virtual double ez_coeff(int i, int m, unsigned mask) const = 0;
};

// Called once for the initial state (sample 0, t = 0) and once after each
// step with the just-updated fields.
using StepObserver = std::function<void(int sample, double t, const Ez2DView& ez)>;

/// Runs the configured simulation. `shifts`, when present, replaces the
/// named perturbations by ordinary real offsets (finite-difference
/// baselines); a run whose every parameter is shifted executes at order 0.
RunOutput run_simulation(const SimulationConfig& cfg, const RealShifts* shifts = nullptr,
                         const StepObserver* observer = nullptr);

/// The same configuration with no perturbations (an order-0 reference).
SimulationConfig without_perturbations(SimulationConfig cfg);

/// Real shifts covering every parameter: name -> sign * its declared step
/// scaled by `scale` (finite-difference companions).
RealShifts all_real_shifts(const SimulationConfig& cfg, double scale);

namespace detail {
RunOutput run_simulation_2d(const SimulationConfig& cfg, const RealShifts* shifts, const StepObserver* observer,
                            int order);
RunOutput run_simulation_3d(const SimulationConfig& cfg, const RealShifts* shifts, const StepObserver* observer,
                            int order);
}  // namespace detail

}  // namespace mcfdtd
