#include "mcfdtd/linf.hpp"

#include <cmath>

namespace mcfdtd {

double linf_error(std::span<const double> numeric, std::span<const double> oracle, double guard_fraction) {
  if (numeric.size() != oracle.size()) throw Error("linf_error: shape mismatch");
  double peak = 0;
  for (double v : oracle) peak = std::max(peak, std::fabs(v));
  if (!(peak > 0)) throw Error("linf_error: oracle is identically zero");
  LinfAccumulator acc(peak, guard_fraction);
  for (std::size_t n = 0; n < numeric.size(); ++n) acc.add(numeric[n], oracle[n]);
  return acc.value();
}

}  // namespace mcfdtd
