#include "mcfdtd/csd.hpp"

#include <cmath>

namespace mcfdtd {

int DerivativeRequest::total_order() const {
  int p = 0;
  for (const auto& t : terms) p += t.order;
  return p;
}

void DerivativeRequest::validate(std::size_t n_params) const {
  if (terms.size() != n_params)
    throw Error("derivative request covers " + std::to_string(terms.size()) + " parameters, function has " +
                std::to_string(n_params));
  int p = 0;
  for (const auto& t : terms) {
    if (t.order < 0) throw Error("negative derivative order");
    if (t.order > 0 && !(t.step > 0)) throw Error("derivative step must be positive");
    p += t.order;
  }
  if (p < 1) throw Error("derivative request has total order zero");
  if (p > kMaxOrder) throw Error("total derivative order " + std::to_string(p) + " exceeds the supported maximum " +
                                 std::to_string(kMaxOrder));
}

double fd_derivative(const std::function<double(double)>& f, double x0, const FdScheme& scheme) {
  if (!(scheme.step > 0)) throw Error("finite-difference step must be positive");
  const double h = scheme.step;
  switch (scheme.kind) {
    case FdKind::kForward:
      return (f(x0 + h) - f(x0)) / h;
    case FdKind::kBackward:
      return (f(x0) - f(x0 - h)) / h;
    case FdKind::kCentered:
      return (f(x0 + h) - f(x0 - h)) / (2.0 * h);
    case FdKind::kCenteredSecond:
      return (f(x0 + h) - 2.0 * f(x0) + f(x0 - h)) / (h * h);
  }
  throw Error("unknown finite-difference scheme");
}

std::string method_name(SweepMethod m) {
  switch (m) {
    case SweepMethod::kCsd: return "csd";
    case SweepMethod::kMcsd: return "mcsd";
    case SweepMethod::kForward: return "forward";
    case SweepMethod::kBackward: return "backward";
    case SweepMethod::kCentered: return "centered";
    case SweepMethod::kCenteredSecond: return "centered-second";
  }
  return "?";
}

int method_order(SweepMethod m) {
  return (m == SweepMethod::kMcsd || m == SweepMethod::kCenteredSecond) ? 2 : 1;
}

}  // namespace mcfdtd
