#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "mcfdtd/dynmc.hpp"
#include "mcfdtd/multicomplex.hpp"

using mcfdtd::DynMc;
using mcfdtd::ImaginaryIndex;
using mcfdtd::Multicomplex;
using mcfdtd::NotInvertibleError;

namespace {

constexpr double kPi = 3.14159265358979323846;

template <int N>
Multicomplex<N> random_mc(std::mt19937& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  Multicomplex<N> r;
  for (unsigned s = 0; s < Multicomplex<N>::size; ++s) r[s] = d(rng);
  return r;
}

template <int N>
double max_diff(const Multicomplex<N>& a, const Multicomplex<N>& b) {
  double m = 0.0;
  for (unsigned s = 0; s < Multicomplex<N>::size; ++s) m = std::max(m, std::fabs(a[s] - b[s]));
  return m;
}

// Bicomplex tan recast in ordinary complex arithmetic (independent route
// used to pin the Im12 extraction): writing z = alpha + (j1+j2)beta as
// (z1) + j2 (z2) with z1, z2 in C(j1) gives tan z = (z1' + j2 z2') with
// z1' = (zeta1*zeta3 + zeta2*zeta4) / (zeta3^2 + zeta4^2)
// z2' = (zeta2*zeta3 - zeta1*zeta4) / (zeta3^2 + zeta4^2).
std::complex<double> bicomplex_tan_outer_part(double alpha, double beta) {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  const C z1 = std::sin(alpha) * std::pow(std::cosh(beta), 2) + i * 0.5 * std::cos(alpha) * std::sinh(2 * beta);
  const C z2 = 0.5 * std::cos(alpha) * std::sinh(2 * beta) - i * std::sin(alpha) * std::pow(std::sinh(beta), 2);
  const C z3 = std::cos(alpha) * std::pow(std::cosh(beta), 2) - i * 0.5 * std::sin(alpha) * std::sinh(2 * beta);
  const C z4 = -0.5 * std::sin(alpha) * std::sinh(2 * beta) - i * std::cos(alpha) * std::pow(std::sinh(beta), 2);
  return (z2 * z3 - z1 * z4) / (z3 * z3 + z4 * z4);
}

}  // namespace

TEST_CASE("real embedding and coefficient layout") {
  auto a = mcfdtd::from_real<2>(3.5);
  CHECK(a[0] == 3.5);
  CHECK(a[1] == 0.0);
  CHECK(a[2] == 0.0);
  CHECK(a[3] == 0.0);

  auto z = mcfdtd::from_real<4>(0.0);
  for (unsigned s = 0; s < 16; ++s) CHECK(z[s] == 0.0);

  auto one = mcfdtd::from_real<0>(1.0);
  CHECK(one.real() == 1.0);
  CHECK(Multicomplex<0>::size == 1);
}

TEST_CASE("additive group basics") {
  using M2 = Multicomplex<2>;
  const M2 a = 1.0 + M2::unit(1);
  const M2 b = 2.0 + M2::unit(2);
  const M2 s = a + b;
  CHECK(s[0] == 3.0);
  CHECK(s[1] == 1.0);
  CHECK(s[2] == 1.0);
  CHECK(s[3] == 0.0);

  CHECK(a + mcfdtd::from_real<2>(0.0) == a);
  const M2 c = M2::unit(1) + M2::unit(2);
  const M2 z = c + (-c);
  for (unsigned i = 0; i < 4; ++i) CHECK(z[i] == 0.0);
}

TEST_CASE("basis multiplication rules") {
  using M2 = Multicomplex<2>;
  const M2 j1 = M2::unit(1);
  const M2 j2 = M2::unit(2);

  CHECK((j1 * j1)[0] == -1.0);           // j1*j1 = -1
  CHECK((j2 * j2)[0] == -1.0);
  CHECK((j1 * j2)[3] == 1.0);            // j1*j2 has coefficient 1 on mask {1,2}
  CHECK(max_diff(j1 * j2, j2 * j1) == 0.0);

  // (x + j1 h)^2 = x^2 - h^2 + j1 2xh
  const double x = 1.7, h = 0.3;
  const auto sq = (x + Multicomplex<1>::unit(1, h)) * (x + Multicomplex<1>::unit(1, h));
  CHECK(sq[0] == doctest::Approx(x * x - h * h).epsilon(1e-15));
  CHECK(sq[1] == doctest::Approx(2 * x * h).epsilon(1e-15));
}

TEST_CASE("order promotion in mixed arithmetic") {
  const Multicomplex<1> a = 2.0 + Multicomplex<1>::unit(1, 0.5);
  const Multicomplex<3> b = Multicomplex<3>::unit(3, 4.0);
  const auto p = a * b;  // order 3
  static_assert(decltype(p)::order == 3);
  CHECK(p[0b100] == 8.0);   // 2 * 4 j3
  CHECK(p[0b101] == 2.0);   // 0.5 j1 * 4 j3
  const auto s = a + b;
  CHECK(s[0] == 2.0);
  CHECK(s[0b100] == 4.0);
}

TEST_CASE("ring laws hold on random values (orders 1..4)") {
  std::mt19937 rng(12345);
  auto check_order = [&](auto nc) {
    constexpr int N = decltype(nc)::value;
    for (int it = 0; it < 10000; ++it) {
      const auto a = random_mc<N>(rng);
      const auto b = random_mc<N>(rng);
      const auto c = random_mc<N>(rng);
      const double eps = 4.0 * std::numeric_limits<double>::epsilon();
      // per-coefficient tolerance, scaled by the accumulation width and
      // operand magnitudes
      const double scale2 = (1u << N) * (1.0 + mcfdtd::max_abs_coeff(a)) * (1.0 + mcfdtd::max_abs_coeff(b));
      const double scale3 = scale2 * (1.0 + mcfdtd::max_abs_coeff(c)) * (1u << N);
      CHECK(max_diff(a * b, b * a) <= eps * scale2);
      CHECK(max_diff((a * b) * c, a * (b * c)) <= eps * scale3);
      CHECK(max_diff(a * (b + c), a * b + a * c) <= eps * scale3);
      CHECK(max_diff(a + (b + c), (a + b) + c) <= eps * scale3);
    }
  };
  check_order(std::integral_constant<int, 1>{});
  check_order(std::integral_constant<int, 2>{});
  check_order(std::integral_constant<int, 3>{});
  check_order(std::integral_constant<int, 4>{});
}

TEST_CASE("order 1 agrees with std::complex") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int it = 0; it < 10000; ++it) {
    const double ar = d(rng), ai = d(rng), br = d(rng), bi = d(rng);
    const Multicomplex<1> a = ar + Multicomplex<1>::unit(1, ai);
    const Multicomplex<1> b = br + Multicomplex<1>::unit(1, bi);
    const std::complex<double> ca(ar, ai), cb(br, bi);

    const auto p = a * b;
    const auto cp = ca * cb;
    CHECK(p[0] == doctest::Approx(cp.real()).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(cp.imag()).epsilon(1e-14));

    const auto q = a / b;
    const auto cq = ca / cb;
    CHECK(q[0] == doctest::Approx(cq.real()).epsilon(1e-12));
    CHECK(q[1] == doctest::Approx(cq.imag()).epsilon(1e-12));

    const auto s = mcfdtd::sin(a);
    const auto cs = std::sin(ca);
    CHECK(s[0] == doctest::Approx(cs.real()).epsilon(1e-12));
    CHECK(s[1] == doctest::Approx(cs.imag()).epsilon(1e-12));

    const auto e = mcfdtd::exp(a);
    const auto ce = std::exp(ca);
    CHECK(e[0] == doctest::Approx(ce.real()).epsilon(1e-12));
    CHECK(e[1] == doctest::Approx(ce.imag()).epsilon(1e-12));
  }
}

TEST_CASE("inverse: reals, perturbed coefficients, zero divisors") {
  // real reciprocal at any order
  CHECK(mcfdtd::inv(mcfdtd::from_real<0>(2.0)).real() == 0.5);
  CHECK(mcfdtd::inv(mcfdtd::from_real<3>(2.0)).real() == 0.5);

  // eps_r + (j1+j2)h against the closed-form decomposition. Expanding
  // (e + (j1+j2)h) * [(e^2+2h^2) - (j1+j2)he + 2 j1j2 h^2] = e (e^2+4h^2)
  // fixes the four components; the expansion multiplies back to exactly 1,
  // which is also asserted directly.
  const double er = 2.2, h = 1e-5;
  using M2 = Multicomplex<2>;
  const M2 a = er + M2::unit(1, h) + M2::unit(2, h);
  const M2 ia = mcfdtd::inv(a);
  const M2 prod = a * ia;
  CHECK(std::fabs(prod[0] - 1.0) <= 8 * std::numeric_limits<double>::epsilon());
  for (unsigned s = 1; s < 4; ++s) CHECK(std::fabs(prod[s]) <= 8 * std::numeric_limits<double>::epsilon());

  const double denom = er * (er * er + 4 * h * h);
  CHECK(ia[0] == doctest::Approx((er * er + 2 * h * h) / denom).epsilon(1e-14));
  CHECK(ia[1] == doctest::Approx(-h * er / denom).epsilon(1e-14));
  CHECK(ia[2] == doctest::Approx(-h * er / denom).epsilon(1e-14));
  CHECK(ia[3] == doctest::Approx(2 * h * h / denom).epsilon(1e-14));

  // (1 + j1 j2) is a zero divisor: (1+j1j2)(1-j1j2) = 1 - (j1j2)^2 = 0
  M2 zd = 1.0;
  zd[3] = 1.0;
  CHECK_THROWS_AS((void)mcfdtd::inv(zd), NotInvertibleError);
  M2 other = 1.0;
  other[3] = -1.0;
  const auto nil = zd * other;
  CHECK(mcfdtd::max_abs_coeff(nil) == 0.0);
}

TEST_CASE("mul(a, inv(a)) == 1 on random invertible values") {
  std::mt19937 rng(4242);
  int checked = 0;
  for (int it = 0; it < 10000; ++it) {
    auto a = random_mc<3>(rng);
    a[0] += (a[0] >= 0 ? 2.0 : -2.0);  // keep away from the singular set
    Multicomplex<3> p;
    try {
      p = a * mcfdtd::inv(a);
    } catch (const NotInvertibleError&) {
      continue;
    }
    ++checked;
    CHECK(std::fabs(p[0] - 1.0) <= 1e-12);
    for (unsigned s = 1; s < 8; ++s) CHECK(std::fabs(p[s]) <= 1e-12);
  }
  CHECK(checked > 9000);
}

TEST_CASE("stub sensitivity: first derivative via Im1 of tan") {
  const double l = 0.125, h = 1e-10;
  const auto arg = 2.0 * kPi * (l + Multicomplex<1>::unit(1, h));
  const auto t = mcfdtd::tan(arg);
  const double deriv = t.imag(ImaginaryIndex::units({1})) / h;
  CHECK(std::fabs(deriv - 4.0 * kPi) < 1e-12);
}

TEST_CASE("stub sensitivity: second derivative via Im12 of bicomplex tan") {
  const double l = 0.125, h = 1e-6;
  using M2 = Multicomplex<2>;
  const auto arg = 2.0 * kPi * (l + M2::unit(1, h) + M2::unit(2, h));
  const auto t = mcfdtd::tan(arg);
  const double deriv = t.imag(ImaginaryIndex::units({1, 2})) / (h * h);
  const double truth = 16.0 * kPi * kPi;
  // leading error is (h^2/3) d4b/dl4 ~ 2.6e-10 relative at h = 1e-6
  CHECK(std::fabs(deriv - truth) / truth < 1e-9);
  CHECK(std::fabs(deriv - truth) / truth > 1e-11);
}

TEST_CASE("bicomplex tan matches the complex-arithmetic recast") {
  const double l = 0.125, h = 1e-3;
  const double alpha = 2.0 * kPi * l, beta = 2.0 * kPi * h;
  using M2 = Multicomplex<2>;
  const auto t = mcfdtd::tan(alpha + M2::unit(1, beta) + M2::unit(2, beta));
  const auto outer = bicomplex_tan_outer_part(alpha, beta);
  CHECK(t[2] == doctest::Approx(outer.real()).epsilon(1e-13));
  CHECK(t[3] == doctest::Approx(outer.imag()).epsilon(1e-13));
}

TEST_CASE("sin^2 + cos^2 == 1 on random values") {
  // Coefficient magnitudes are kept <= 1 with the total imaginary weight
  // of comparable size across orders, so the identity's conditioning is
  // uniform and the componentwise residual bound is meaningful.
  std::mt19937 rng(99);
  auto run = [&](auto nc) {
    constexpr int N = decltype(nc)::value;
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int it = 0; it < 2000; ++it) {
      Multicomplex<N> a = d(rng);
      for (unsigned s = 1; s < Multicomplex<N>::size; ++s) a[s] = d(rng) / double(Multicomplex<N>::size - 1);
      const auto sc = mcfdtd::sincos(a);
      const auto one = sc.sin * sc.sin + sc.cos * sc.cos;
      CHECK(std::fabs(one[0] - 1.0) < 1e-12);
      for (unsigned s = 1; s < Multicomplex<N>::size; ++s) CHECK(std::fabs(one[s]) < 1e-12);
    }
  };
  run(std::integral_constant<int, 1>{});
  run(std::integral_constant<int, 2>{});
  run(std::integral_constant<int, 3>{});
  run(std::integral_constant<int, 4>{});
}

TEST_CASE("elementary functions at real arguments") {
  const auto z = mcfdtd::from_real<3>(0.0);
  CHECK(mcfdtd::max_abs_coeff(mcfdtd::sin(z)) == 0.0);
  CHECK(mcfdtd::cos(z)[0] == 1.0);
  const auto e = mcfdtd::exp(mcfdtd::from_real<2>(1.0));
  CHECK(e[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
}

TEST_CASE("sqrt and log recover derivative structure") {
  // f(x) = sqrt(x) at x0: Im1/h = 1/(2 sqrt(x0))
  const double x0 = 3.7, h = 1e-12;
  const auto r = mcfdtd::sqrt(x0 + Multicomplex<1>::unit(1, h));
  CHECK(r.imag(ImaginaryIndex::units({1})) / h == doctest::Approx(0.5 / std::sqrt(x0)).epsilon(1e-10));
  const auto lg = mcfdtd::log(x0 + Multicomplex<1>::unit(1, h));
  CHECK(lg[0] == doctest::Approx(std::log(x0)).epsilon(1e-14));
  CHECK(lg.imag(ImaginaryIndex::units({1})) / h == doctest::Approx(1.0 / x0).epsilon(1e-10));

  // second derivative of sqrt via two units
  const double h2 = 1e-6;
  using M2 = Multicomplex<2>;
  const auto r2 = mcfdtd::sqrt(x0 + M2::unit(1, h2) + M2::unit(2, h2));
  const double d2 = r2.imag(ImaginaryIndex::units({1, 2})) / (h2 * h2);
  CHECK(d2 == doctest::Approx(-0.25 * std::pow(x0, -1.5)).epsilon(1e-8));
}

TEST_CASE("im_part indexing and errors") {
  using M2 = Multicomplex<2>;
  M2 v = 3.0 + M2::unit(1, 5.0) + M2::unit(2, 7.0);
  v[3] = 9.0;
  CHECK(mcfdtd::im_part(v, ImaginaryIndex::units({1, 2})) == 9.0);
  CHECK(mcfdtd::im_part(v, ImaginaryIndex{}) == 3.0);
  CHECK(mcfdtd::im_part(mcfdtd::from_real<3>(4.2), ImaginaryIndex::units({2, 3})) == 0.0);
  CHECK_THROWS_AS((void)mcfdtd::im_part(v, ImaginaryIndex::units({3})), mcfdtd::Error);
}

TEST_CASE("operation tally: add/sub 2^n, mult 3^n recursive and 4^n flat") {
  auto& tally = mcfdtd::op_counts();
  std::mt19937 rng(5);
  const auto a = random_mc<3>(rng);
  const auto b = random_mc<3>(rng);

  tally.reset();
  (void)(a + b);
  CHECK(tally.add_sub == 8);

  tally.reset();
  (void)(a * b);
  CHECK(tally.mult == 27);
  CHECK(tally.mult_flat == 64);

  tally.reset();
  (void)(a * Multicomplex<0>(2.0));  // real times order-3
  CHECK(tally.mult == 8);
  CHECK(tally.mult_flat == 8);
}

TEST_CASE("debug formatting is mask-ascending") {
  using M2 = Multicomplex<2>;
  M2 v = 1.0 + M2::unit(1, 2.0);
  v[3] = -4.0;
  std::ostringstream os;
  os << v;
  CHECK(os.str() == "1 + 2*j1 + 0*j2 - 4*j12");
}

TEST_CASE("runtime-order wrapper mirrors the templated algebra") {
  const DynMc a = DynMc::from_real(2.0, 2) + DynMc::unit(1, 0.25);
  const DynMc b = DynMc::unit(2, 3.0);
  const DynMc p = a * b;
  CHECK(p.order() == 2);
  CHECK(p[0b10] == 6.0);
  CHECK(p[0b11] == 0.75);

  const DynMc t = tan(2.0 * kPi * (DynMc(0.125) + DynMc::unit(1, 1e-10)));
  CHECK(std::fabs(t.imag(ImaginaryIndex::units({1})) / 1e-10 - 4 * kPi) < 1e-12);

  CHECK_THROWS_AS((void)DynMc(2, {1, 2, 3}), mcfdtd::Error);
  DynMc zd = DynMc::from_real(1.0, 2);
  zd[3] = 1.0;
  CHECK_THROWS_AS((void)inv(zd), NotInvertibleError);
}

TEST_CASE("maximum supported order is 8") {
  CHECK(Multicomplex<8>::size == 256);
  const auto v = mcfdtd::from_real<8>(1.5);
  CHECK((v * v)[0] == 2.25);
  CHECK_THROWS_AS((void)DynMc::from_real(1.0, 9), mcfdtd::Error);
}
