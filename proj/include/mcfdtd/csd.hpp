#pragma once

// Scalar complex-step / multicomplex-step differentiation and
// finite-difference baselines, independent of the field solver.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mcfdtd/dynmc.hpp"
#include "mcfdtd/multicomplex.hpp"

namespace mcfdtd {

// A mixed partial d^(m0+m1+...)/d xi0^m0 d xi1^m1 ... with one step
// magnitude per parameter. terms[i] applies to the i-th argument of the
// target function; parameters of order zero are left unperturbed.
struct DerivativeRequest {
  struct Term {
    int order = 0;    // m_i >= 0
    double step = 0;  // h_i > 0 whenever order > 0
  };
  std::vector<Term> terms;

  int total_order() const;
  void validate(std::size_t n_params) const;
};

enum class FdKind { kForward, kBackward, kCentered, kCenteredSecond };

struct FdScheme {
  FdKind kind = FdKind::kCentered;
  double step = 1e-5;
};

/// Plain finite-difference stencil on a real function. kCenteredSecond
/// returns a second-derivative estimate; the others first-derivative.
double fd_derivative(const std::function<double(double)>& f, double x0, const FdScheme& scheme);

/// Multicomplex-step estimate of the mixed partial described by `req`.
///
/// Unit assignment is part of the contract: with P = sum of the orders,
/// parameter 0 receives units 1..m0, parameter 1 units m0+1..m0+m1, and
/// so on; the estimate is Im over all P units divided by
/// prod_i h_i^{m_i}. `f` must accept std::span<const Multicomplex<P>>
/// for P in 1..8 (a generic lambda works).
template <class F>
double csd_derivative(F&& f, std::span<const double> nominal, const DerivativeRequest& req) {
  req.validate(nominal.size());
  const int total = req.total_order();
  return detail::dispatch_order(total, [&](auto nc) -> double {
    constexpr int N = decltype(nc)::value;
    std::vector<Multicomplex<N>> xs(nominal.begin(), nominal.end());
    unsigned mask = 0;
    double divisor = 1.0;
    int unit = 1;
    for (std::size_t i = 0; i < req.terms.size(); ++i) {
      for (int k = 0; k < req.terms[i].order; ++k) {
        xs[i] += Multicomplex<N>::unit(unit, req.terms[i].step);
        mask |= 1u << (unit - 1);
        divisor *= req.terms[i].step;
        ++unit;
      }
    }
    // conversion also covers callables that collapse to a real or to a
    // lower order (their missing imaginary parts are zero)
    const Multicomplex<N> y = f(std::span<const Multicomplex<N>>(xs));
    return y.imag(ImaginaryIndex(mask)) / divisor;
  });
}

/// Single-parameter convenience: d^order f / d x^order at x0.
template <class F>
double csd_derivative(F&& f, double x0, int order, double h) {
  DerivativeRequest req;
  req.terms.push_back({order, h});
  const double nominal[1] = {x0};
  return csd_derivative([&](auto xs) { return f(xs[0]); }, std::span<const double>(nominal), req);
}

enum class SweepMethod { kCsd, kMcsd, kForward, kBackward, kCentered, kCenteredSecond };

std::string method_name(SweepMethod m);

/// Derivative order probed by a sweep method (1 for the first-derivative
/// methods, 2 for kMcsd / kCenteredSecond).
int method_order(SweepMethod m);

struct ErrorSweepRow {
  double h = 0;
  double abs_error = 0;
};

/// One row per step size: |estimate(h) - analytic|. `f` must be callable
/// both with a double and with Multicomplex arguments (generic lambda).
template <class F>
std::vector<ErrorSweepRow> error_sweep(F&& f, double x0, double analytic, SweepMethod method,
                                       std::span<const double> h_values) {
  std::vector<ErrorSweepRow> rows;
  rows.reserve(h_values.size());
  for (double h : h_values) {
    double est = 0;
    switch (method) {
      case SweepMethod::kCsd:
        est = csd_derivative(f, x0, 1, h);
        break;
      case SweepMethod::kMcsd:
        est = csd_derivative(f, x0, 2, h);
        break;
      case SweepMethod::kForward:
        est = fd_derivative([&](double x) { return f(x); }, x0, {FdKind::kForward, h});
        break;
      case SweepMethod::kBackward:
        est = fd_derivative([&](double x) { return f(x); }, x0, {FdKind::kBackward, h});
        break;
      case SweepMethod::kCentered:
        est = fd_derivative([&](double x) { return f(x); }, x0, {FdKind::kCentered, h});
        break;
      case SweepMethod::kCenteredSecond:
        est = fd_derivative([&](double x) { return f(x); }, x0, {FdKind::kCenteredSecond, h});
        break;
    }
    rows.push_back({h, std::fabs(est - analytic)});
  }
  return rows;
}

}  // namespace mcfdtd
