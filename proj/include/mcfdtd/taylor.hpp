#pragma once

// Polynomial surrogate of a scalar output in one design parameter,
// built from derivatives at the nominal point.

#include <span>
#include <utility>
#include <vector>

#include "mcfdtd/errors.hpp"

namespace mcfdtd {

struct TaylorModel1D {
  double x0 = 0;
  std::vector<double> coeffs;  // coeffs[k] = f^(k)(x0) / k!

  /// derivs[0] is the nominal value, derivs[k] the k-th derivative.
  static TaylorModel1D from_derivatives(double x0, std::span<const double> derivs);

  int order() const { return int(coeffs.size()) - 1; }
  double evaluate(double x) const;  // Horner in (x - x0)
};

/// Largest radius r such that every reference point with |x - x0| <= r
/// satisfies |model(x) - ref| <= band. Returns 0 when even the nearest
/// point fails.
double effective_range(const TaylorModel1D& model, std::span<const std::pair<double, double>> reference,
                       double band);

}  // namespace mcfdtd
