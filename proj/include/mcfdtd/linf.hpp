#pragma once

// Relative l-infinity norm: max over samples of |numeric - oracle| /
// |oracle|, excluding samples where |oracle| falls under a guard fraction
// of its own peak (nodal lines would otherwise dominate through division
// blowup). The guard is reported alongside results that use it.

#include <span>

#include "mcfdtd/errors.hpp"

namespace mcfdtd {

inline constexpr double kLinfGuardFraction = 1e-6;

double linf_error(std::span<const double> numeric, std::span<const double> oracle,
                  double guard_fraction = kLinfGuardFraction);

// Streaming variant for full-grid histories: the oracle's peak magnitude
// must be known up front (a cheap oracle-only pre-pass).
class LinfAccumulator {
 public:
  LinfAccumulator(double oracle_peak_abs, double guard_fraction = kLinfGuardFraction)
      : guard_(guard_fraction * oracle_peak_abs) {
    if (!(oracle_peak_abs > 0)) throw Error("linf accumulator needs a positive oracle peak");
  }

  void add(double numeric, double oracle) {
    const double mag = oracle < 0 ? -oracle : oracle;
    if (mag < guard_) return;
    const double err = (numeric > oracle ? numeric - oracle : oracle - numeric) / mag;
    if (err > worst_) worst_ = err;
  }

  double value() const { return worst_; }

 private:
  double guard_ = 0;
  double worst_ = 0;
};

}  // namespace mcfdtd
