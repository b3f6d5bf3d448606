#pragma once

// Closed-form reference values used by the self-check command and the
// test suites. Everything here is ordinary real/complex arithmetic so
// that it stays independent of the multicomplex evaluation path it is
// used to check.

#include <cmath>
#include <complex>

namespace mcfdtd::oracles {

inline constexpr double kPi = 3.14159265358979323846;

// Normalized susceptance of an open lossless stub, b(l) = tan(2 pi l / lambda),
// as a generic scalar function usable with double or multicomplex arguments.
struct StubSusceptance {
  double lambda = 1.0;
  template <class T>
  T operator()(const T& l) const {
    using std::tan;
    return tan((2.0 * kPi / lambda) * l);
  }
};

inline double stub_first_derivative(double l, double lambda = 1.0) {
  const double c = std::cos(2.0 * kPi * l / lambda);
  return (2.0 * kPi / lambda) / (c * c);
}

inline double stub_second_derivative(double l, double lambda = 1.0) {
  const double u = 2.0 * kPi * l / lambda;
  return (8.0 * kPi * kPi / (lambda * lambda)) * std::sin(u) / std::pow(std::cos(u), 3);
}

// Bicomplex tan(alpha + (j1 + j2) beta) recast in ordinary complex
// arithmetic. Writing the bicomplex value as (z1) + j2 (z2) with z1, z2
// complex over j1 gives tan = (zeta1 + j2 zeta2) / (zeta3 + j2 zeta4), so
// the j2-part is (zeta2 zeta3 - zeta1 zeta4) / (zeta3^2 + zeta4^2) and its
// ordinary imaginary part is the j1j2 component.
inline std::complex<double> bicomplex_tan_j2_part(double alpha, double beta) {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double ch2 = std::cosh(beta) * std::cosh(beta);
  const double sh2 = std::sinh(beta) * std::sinh(beta);
  const double s2b = std::sinh(2.0 * beta);
  const C zeta1 = sa * ch2 + i * (0.5 * ca * s2b);
  const C zeta2 = 0.5 * ca * s2b - i * (sa * sh2);
  const C zeta3 = ca * ch2 - i * (0.5 * sa * s2b);
  const C zeta4 = -0.5 * sa * s2b - i * (ca * sh2);
  return (zeta2 * zeta3 - zeta1 * zeta4) / (zeta3 * zeta3 + zeta4 * zeta4);
}

/// Second-derivative estimate of the stub susceptance from the complex
/// recast above: Im{ j2-part } / h^2.
inline double zeta_route_second_derivative(double l, double h, double lambda = 1.0) {
  const double alpha = 2.0 * kPi * l / lambda;
  const double beta = 2.0 * kPi * h / lambda;
  return bicomplex_tan_j2_part(alpha, beta).imag() / (h * h);
}

/// |F(f)| envelope of g(t) = exp(-(t/T)^2): T sqrt(pi) exp(-(pi f T)^2).
inline double gaussian_spectrum_magnitude(double f, double half_width) {
  const double x = kPi * f * half_width;
  return half_width * std::sqrt(kPi) * std::exp(-x * x);
}

}  // namespace mcfdtd::oracles
