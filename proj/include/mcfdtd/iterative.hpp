#pragma once

// Marching-in-order scheme: one complex (single-unit) field set per
// derivative order instead of a full 2^n multicomplex run. The order-p
// fields evolve under the p-th parameter derivative of the update
// equations; with every update coefficient of the form C / g(xi), g
// affine in the parameter, the k-th coefficient derivative has the
// closed form C (-1)^k k! sigma^k / g^(k+1). Memory grows linearly in
// the maximum order, against the 2^n factor of a full multicomplex run.
//
// Each order-p field is kept complex in the perturbation unit, so
// Re{F_p} estimates the p-th derivative and Im{F_p}/h the (p+1)-th.

#include <string>
#include <vector>

#include "mcfdtd/multicomplex.hpp"
#include "mcfdtd/runner.hpp"
#include "mcfdtd/simconfig.hpp"
#include "mcfdtd/yee.hpp"

namespace mcfdtd {

class IterativeCsd2D {
 public:
  using C1 = Multicomplex<1>;

  // cfg must be 2-D, all-PEC, with exactly one order-1 perturbation; the
  // scheme marches derivative orders 0..max_order of that parameter.
  IterativeCsd2D(const SimulationConfig& cfg, int max_order);

  void step();
  int step_index() const { return step_; }
  double time() const { return step_ * dt_; }
  double dt() const { return dt_; }
  int max_order() const { return pmax_; }

  const C1& ez(int p, int i, int m) const { return ez_[p].at(i, m); }

  C1 probe_value(int p, const ProbeSpec& probe) const;

 private:
  void build_coefficient_derivatives();
  void init_modal(const SourceSpec& src);

  SimulationConfig cfg_;
  int pmax_ = 0;
  int nx_ = 0, ny_ = 0;
  double dt_ = 0;
  int step_ = 0;
  double step_h_ = 0;

  // per order p: field arrays
  std::vector<Array2<C1>> ez_, hx_, hy_;
  // coefficient derivative tables, k = 0..pmax
  std::vector<Array2<C1>> cex_k_, cey_k_;           // E update, per node
  std::vector<std::vector<C1>> chx_k_, chy_k_;      // H update, per axis index
  std::vector<std::vector<double>> binom_;
};

struct IterativeRunOutput {
  std::string name;
  std::string config_hash;
  int max_order = 0;
  int steps = 0;
  double dt = 0;
  double step_h = 0;
  std::vector<double> times;
  // probe series per order p (ncoeff = 2: real and the single Im part)
  std::vector<std::vector<ProbeSeries>> by_order;

  const ProbeSeries& probe(int order, const std::string& name) const;

  // p-th derivative estimate of a probe: Im{F_(p-1)}/h, or Re{F_0} at p=0
  std::vector<double> derivative_series(int order, const std::string& name) const;
};

IterativeRunOutput run_iterative_csd(const SimulationConfig& cfg, int max_order);

}  // namespace mcfdtd
