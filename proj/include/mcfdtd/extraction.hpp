#pragma once

// Turns raw multicomplex run output into named derivative records, and
// assembles Jacobian/Hessian reports from batches of runs.

#include <span>
#include <string>
#include <vector>

#include "mcfdtd/runner.hpp"
#include "mcfdtd/simconfig.hpp"

namespace mcfdtd {

struct DerivativeRecord {
  std::string probe;
  std::vector<DerivativeTerm> terms;
  int order = 0;
  // "fractional": geometric derivatives w.r.t. the dimensionless stretch;
  // "absolute": per meter of physical length. Material parameters are
  // per unit eps_r either way.
  std::string convention = "absolute";
  std::vector<double> times;
  std::vector<double> values;
};

/// values[n] = Im_mask(probe sample n) / divisor, with the mask and
/// divisor from the run's perturbation spec and unit assignment.
/// An empty/zero-order request extracts the real part.
DerivativeRecord extract(const RunOutput& out, const SimulationConfig& cfg, const std::string& probe,
                         const std::vector<DerivativeTerm>& terms, bool absolute_lengths = true);

struct ParamRun {
  std::string param;
  const SimulationConfig* cfg = nullptr;
  const RunOutput* out = nullptr;
};

struct JacobianReport {
  std::vector<std::string> params;  // column order
  std::vector<std::string> probes;  // row-block order
  std::vector<double> times;
  // series[probe index][param index] is one first-derivative time series
  std::vector<std::vector<std::vector<double>>> series;
  int runs_used = 0;
  int cfd_equivalent_runs = 0;  // at least 2N
};

/// One order-1 run per parameter; probes must agree across runs.
JacobianReport assemble_jacobian(std::span<const ParamRun> runs, const std::vector<std::string>& params,
                                 bool absolute_lengths = true);

struct HessianEntryRun {
  std::string param_i, param_j;  // i == j for diagonal runs
  const SimulationConfig* cfg = nullptr;
  const RunOutput* out = nullptr;
};

struct HessianReport {
  std::vector<std::string> params;
  std::string probe;
  std::vector<double> times;
  std::vector<std::vector<std::vector<double>>> series;  // [i][j] symmetric-filled
  int runs_used = 0;
  int mcsd_full_pairs = 0;      // N^2: one run per ordered pair
  int cfd_equivalent_runs = 0;  // at least 4N^2
  double max_symmetry_residual = 0;  // over redundant (j,i) runs, when given
};

/// Runs must cover the upper triangle (i <= j); diagonal runs carry two
/// units on one parameter, off-diagonal runs one unit on each. Redundant
/// transposed runs, when supplied, are used for the symmetry residual.
HessianReport assemble_hessian(std::span<const HessianEntryRun> runs, const std::vector<std::string>& params,
                               const std::string& probe, bool absolute_lengths = true);

}  // namespace mcfdtd
