#include "mcfdtd/taylor.hpp"

#include <algorithm>
#include <cmath>

namespace mcfdtd {

TaylorModel1D TaylorModel1D::from_derivatives(double x0, std::span<const double> derivs) {
  if (derivs.empty()) throw Error("taylor model needs at least the order-0 value");
  TaylorModel1D m;
  m.x0 = x0;
  m.coeffs.resize(derivs.size());
  double fact = 1.0;
  for (std::size_t k = 0; k < derivs.size(); ++k) {
    if (k > 1) fact *= double(k);
    m.coeffs[k] = k <= 1 ? derivs[k] : derivs[k] / fact;
  }
  return m;
}

double TaylorModel1D::evaluate(double x) const {
  const double u = x - x0;
  double acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  return acc;
}

double effective_range(const TaylorModel1D& model, std::span<const std::pair<double, double>> reference,
                       double band) {
  std::vector<std::pair<double, double>> pts(reference.begin(), reference.end());
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
    return std::fabs(a.first - model.x0) < std::fabs(b.first - model.x0);
  });
  double range = 0;
  for (const auto& [x, ref] : pts) {
    if (std::fabs(model.evaluate(x) - ref) > band) break;
    range = std::fabs(x - model.x0);
  }
  return range;
}

}  // namespace mcfdtd
