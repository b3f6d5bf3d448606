#pragma once

// Multicomplex (C^n) scalar arithmetic.
//
// A value of order n carries 2^n real coefficients indexed by a bitmask
// S over the commuting imaginary units j1..jn. coeff[S] multiplies the
// basis element prod_{k in S} j_k; S = 0 is the real part. The basis
// multiplication rule is
//
//     e_S * e_T = (-1)^|S & T| * e_(S ^ T)
//
// which reproduces j_k*j_k = -1 and j_i*j_k = j_k*j_i != -1. Order 0 is
// a plain real number. The flat-array layout keeps the recursive pair
// definition z = z1 + j_n*z2 available through half()/join(): z1 is the
// half with bit (n-1) clear, z2 the half with it set.
//
// Values are immutable in spirit: every operation returns a new value,
// so they are safe to share across threads. The operation tally is
// thread-local.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <string>

#include "mcfdtd/errors.hpp"

namespace mcfdtd {

inline constexpr int kMaxOrder = 8;  // up to 256 coefficients

// Denominators whose recursion bottoms out below this modulus are
// treated as zero divisors.
inline constexpr double kInvTolerance = 1e-30;

namespace detail {
constexpr std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Operation tally.
//
// Tracks real-arithmetic work at the scalar-operation level. Additions
// and subtractions of two order-n values perform exactly 2^n real
// add/subs. For products two figures are kept: `mult` counts real
// multiplications under the recursive three-product (Karatsuba-style)
// scheme, 3^n per full product, which is the accounting used for the
// reference cost figures; `mult_flat` counts the 4^n real
// multiplications the flat kernel actually executes. Component
// additions internal to a product routine are attributed to the product
// and are not part of `add_sub`.
// ---------------------------------------------------------------------------
struct OpCounts {
  std::uint64_t add_sub = 0;    // real +/- at the scalar-add level
  std::uint64_t mult = 0;       // real products, recursive accounting (3^n)
  std::uint64_t mult_flat = 0;  // real products executed by the flat kernel (4^n)

  OpCounts operator-(const OpCounts& o) const {
    return {add_sub - o.add_sub, mult - o.mult, mult_flat - o.mult_flat};
  }
  void reset() { *this = OpCounts{}; }
};

inline OpCounts& op_counts() {
  thread_local OpCounts tally;
  return tally;
}

// ---------------------------------------------------------------------------
// Imaginary-part selector: a subset of {1..n} encoded as a bitmask
// (unit k <-> bit k-1). The empty mask selects the real part.
// ---------------------------------------------------------------------------
struct ImaginaryIndex {
  unsigned mask = 0;

  constexpr ImaginaryIndex() = default;
  constexpr explicit ImaginaryIndex(unsigned m) : mask(m) {}

  // From 1-based unit labels, e.g. units({1, 2}) selects Im12.
  static ImaginaryIndex units(std::initializer_list<int> ks) {
    unsigned m = 0;
    for (int k : ks) {
      if (k < 1 || k > kMaxOrder) throw Error("imaginary unit index out of range: " + std::to_string(k));
      m |= 1u << (k - 1);
    }
    return ImaginaryIndex(m);
  }

  int order() const { return std::popcount(mask); }

  // "j12", "j134", ... ; "re" for the empty mask.
  std::string label() const {
    if (mask == 0) return "re";
    std::string s = "j";
    for (int k = 0; k < kMaxOrder; ++k)
      if (mask & (1u << k)) s += std::to_string(k + 1);
    return s;
  }
};

// ---------------------------------------------------------------------------
// Multicomplex scalar, order fixed at compile time.
// ---------------------------------------------------------------------------
template <int N>
class Multicomplex {
  static_assert(N >= 0 && N <= kMaxOrder, "unsupported multicomplex order");

 public:
  static constexpr int order = N;
  static constexpr unsigned size = 1u << N;

  constexpr Multicomplex() : c_{} {}
  constexpr Multicomplex(double re) : c_{} { c_[0] = re; }  // NOLINT: implicit by design

  // Zero-padding promotion from a lower order.
  template <int M, typename = std::enable_if_t<(M < N)>>
  constexpr Multicomplex(const Multicomplex<M>& lo) : c_{} {
    for (unsigned s = 0; s < Multicomplex<M>::size; ++s) c_[s] = lo[s];
  }

  // The pure imaginary j_k (1-based), optionally scaled.
  static constexpr Multicomplex unit(int k, double scale = 1.0) {
    Multicomplex r;
    r.c_[mask_of_unit(k)] = scale;
    return r;
  }

  static constexpr unsigned mask_of_unit(int k) {
    return (k >= 1 && k <= N) ? (1u << (k - 1))
                              : throw Error("unit index exceeds order");
  }

  constexpr double operator[](unsigned mask) const { return c_[mask]; }
  constexpr double& operator[](unsigned mask) { return c_[mask]; }

  constexpr double real() const { return c_[0]; }

  double imag(ImaginaryIndex idx) const {
    if (idx.mask >= size) throw Error("imaginary index " + idx.label() + " out of range for order " + std::to_string(N));
    return c_[idx.mask];
  }

  // Recursive-view halves with respect to the top unit j_N (requires N >= 1):
  // *this == half_lo() + j_N * half_hi().
  Multicomplex<(N > 0 ? N - 1 : 0)> half_lo() const {
    Multicomplex<(N > 0 ? N - 1 : 0)> r;
    for (unsigned s = 0; s < (size >> 1); ++s) r[s] = c_[s];
    return r;
  }
  Multicomplex<(N > 0 ? N - 1 : 0)> half_hi() const {
    Multicomplex<(N > 0 ? N - 1 : 0)> r;
    for (unsigned s = 0; s < (size >> 1); ++s) r[s] = c_[s | (size >> 1)];
    return r;
  }

  const double* data() const { return c_.data(); }
  double* data() { return c_.data(); }

  bool operator==(const Multicomplex& o) const { return c_ == o.c_; }

  Multicomplex& operator+=(const Multicomplex& o) {
    for (unsigned s = 0; s < size; ++s) c_[s] += o.c_[s];
    op_counts().add_sub += size;
    return *this;
  }
  Multicomplex& operator-=(const Multicomplex& o) {
    for (unsigned s = 0; s < size; ++s) c_[s] -= o.c_[s];
    op_counts().add_sub += size;
    return *this;
  }
  Multicomplex& operator+=(double x) {
    c_[0] += x;
    op_counts().add_sub += 1;
    return *this;
  }
  Multicomplex& operator-=(double x) {
    c_[0] -= x;
    op_counts().add_sub += 1;
    return *this;
  }
  Multicomplex& operator*=(double x) {
    for (unsigned s = 0; s < size; ++s) c_[s] *= x;
    op_counts().mult += size;
    op_counts().mult_flat += size;
    return *this;
  }

 private:
  std::array<double, size> c_;
};

template <int N>
Multicomplex<N> join(const Multicomplex<N - 1 < 0 ? 0 : N - 1>& lo,
                     const Multicomplex<N - 1 < 0 ? 0 : N - 1>& hi) {
  static_assert(N >= 1);
  Multicomplex<N> r;
  constexpr unsigned half = 1u << (N - 1);
  for (unsigned s = 0; s < half; ++s) {
    r[s] = lo[s];
    r[s | half] = hi[s];
  }
  return r;
}

// from_real(x, n) from the runtime-order side lives in dynmc.hpp; the
// compile-time embedding is just the implicit double constructor.
template <int N>
constexpr Multicomplex<N> from_real(double x) {
  return Multicomplex<N>(x);
}

template <int N>
double im_part(const Multicomplex<N>& a, ImaginaryIndex idx) {
  return a.imag(idx);
}

// --- additive group ---------------------------------------------------------

template <int A, int B>
Multicomplex<(A > B ? A : B)> operator+(const Multicomplex<A>& x, const Multicomplex<B>& y) {
  constexpr int R = (A > B ? A : B);
  Multicomplex<R> r;
  constexpr unsigned lo = (A < B ? Multicomplex<A>::size : Multicomplex<B>::size);
  for (unsigned s = 0; s < lo; ++s) r[s] = x[s] + y[s];
  if constexpr (A > B) {
    for (unsigned s = lo; s < Multicomplex<A>::size; ++s) r[s] = x[s];
  } else if constexpr (B > A) {
    for (unsigned s = lo; s < Multicomplex<B>::size; ++s) r[s] = y[s];
  }
  op_counts().add_sub += lo;
  return r;
}

template <int A, int B>
Multicomplex<(A > B ? A : B)> operator-(const Multicomplex<A>& x, const Multicomplex<B>& y) {
  constexpr int R = (A > B ? A : B);
  Multicomplex<R> r;
  constexpr unsigned lo = (A < B ? Multicomplex<A>::size : Multicomplex<B>::size);
  for (unsigned s = 0; s < lo; ++s) r[s] = x[s] - y[s];
  if constexpr (A > B) {
    for (unsigned s = lo; s < Multicomplex<A>::size; ++s) r[s] = x[s];
  } else if constexpr (B > A) {
    for (unsigned s = lo; s < Multicomplex<B>::size; ++s) r[s] = -y[s];
  }
  op_counts().add_sub += lo;
  return r;
}

template <int N>
Multicomplex<N> operator-(const Multicomplex<N>& x) {
  Multicomplex<N> r;
  for (unsigned s = 0; s < Multicomplex<N>::size; ++s) r[s] = -x[s];
  op_counts().add_sub += Multicomplex<N>::size;
  return r;
}

template <int N>
Multicomplex<N> operator+(const Multicomplex<N>& x, double y) {
  Multicomplex<N> r = x;
  r[0] += y;
  op_counts().add_sub += 1;
  return r;
}
template <int N>
Multicomplex<N> operator+(double x, const Multicomplex<N>& y) { return y + x; }
template <int N>
Multicomplex<N> operator-(const Multicomplex<N>& x, double y) {
  Multicomplex<N> r = x;
  r[0] -= y;
  op_counts().add_sub += 1;
  return r;
}
template <int N>
Multicomplex<N> operator-(double x, const Multicomplex<N>& y) {
  Multicomplex<N> r = -y;
  r[0] += x;
  op_counts().add_sub += 1;
  return r;
}

// --- products ---------------------------------------------------------------

// Flat product kernel: for every pair (S, T), coefficient a[S]*b[T] lands on
// mask S^T with sign (-1)^|S&T|. Accumulation starts from the (0,T) row so a
// value with zero imaginary parts perturbs nothing (exact-zero additions),
// which keeps a null perturbation bit-identical to a real run.
template <int A, int B>
Multicomplex<(A > B ? A : B)> operator*(const Multicomplex<A>& x, const Multicomplex<B>& y) {
  constexpr int R = (A > B ? A : B);
  Multicomplex<R> r;
  for (unsigned s = 0; s < Multicomplex<A>::size; ++s) {
    const double xs = x[s];
    for (unsigned t = 0; t < Multicomplex<B>::size; ++t) {
      const double p = xs * y[t];
      const unsigned u = s ^ t;
      if (std::popcount(s & t) & 1)
        r[u] -= p;
      else
        r[u] += p;
    }
  }
  op_counts().mult += detail::ipow(3, (A < B ? A : B)) * detail::ipow(2, (A > B ? A : B) - (A < B ? A : B));
  op_counts().mult_flat += std::uint64_t(Multicomplex<A>::size) * Multicomplex<B>::size;
  return r;
}

template <int N>
Multicomplex<N> operator*(const Multicomplex<N>& x, double y) {
  Multicomplex<N> r;
  for (unsigned s = 0; s < Multicomplex<N>::size; ++s) r[s] = x[s] * y;
  op_counts().mult += Multicomplex<N>::size;
  op_counts().mult_flat += Multicomplex<N>::size;
  return r;
}
template <int N>
Multicomplex<N> operator*(double x, const Multicomplex<N>& y) { return y * x; }

// Largest absolute coefficient; handy for tolerances.
template <int N>
double max_abs_coeff(const Multicomplex<N>& a) {
  double m = 0.0;
  for (unsigned s = 0; s < Multicomplex<N>::size; ++s) m = std::max(m, std::fabs(a[s]));
  return m;
}

// --- inverse and division ---------------------------------------------------

// Recursive inverse: for a = z1 + j_n z2, a * (z1 - j_n z2) = z1^2 + z2^2
// lives in C^(n-1), so inv(a) = (z1 - j_n z2) * inv(z1^2 + z2^2) with a real
// reciprocal at the bottom. A zero divisor drives some recursive denominator
// to (near) zero, which is reported instead of propagated.
inline Multicomplex<0> inv(const Multicomplex<0>& a) {
  if (std::fabs(a[0]) < kInvTolerance)
    throw NotInvertibleError("multicomplex inverse: denominator modulus " + std::to_string(a[0]) +
                             " below singularity tolerance (zero divisor or zero)");
  Multicomplex<0> r;
  r[0] = 1.0 / a[0];
  op_counts().mult += 1;
  op_counts().mult_flat += 1;
  return r;
}

template <int N>
Multicomplex<N> inv(const Multicomplex<N>& a) {
  // Normalize by an exact power of two first: the recursive denominators
  // scale like |a|^(2^N), which would drive well-conditioned small values
  // (cell sizes in meters, say) under the singularity tolerance. Power-of-
  // two scaling is exact, so this changes no result bits otherwise.
  const double m = max_abs_coeff(a);
  if (!(m > 0))
    throw NotInvertibleError("multicomplex inverse of zero");
  const double down = std::exp2(-std::ilogb(m));
  const Multicomplex<N> b = a * down;
  const auto z1 = b.half_lo();
  const auto z2 = b.half_hi();
  const auto w = inv(z1 * z1 + z2 * z2);
  const Multicomplex<N> r = join<N>(z1 * w, -(z2 * w));
  return r * down;
}

template <int A, int B>
Multicomplex<(A > B ? A : B)> operator/(const Multicomplex<A>& x, const Multicomplex<B>& y) {
  return x * inv(y);
}
template <int N>
Multicomplex<N> operator/(const Multicomplex<N>& x, double y) { return x * (1.0 / y); }
template <int N>
Multicomplex<N> operator/(double x, const Multicomplex<N>& y) { return x * inv(y); }

template <int A, int B>
Multicomplex<(A > B ? A : B)> div(const Multicomplex<A>& x, const Multicomplex<B>& y) {
  return x / y;
}

// --- elementary functions ---------------------------------------------------
//
// Computed by the recursive addition-formula splitting over a = z1 + j_n z2:
//   sin a = sin z1 cosh z2 + j_n cos z1 sinh z2
//   cos a = cos z1 cosh z2 - j_n sin z1 sinh z2
//   sinh a = sinh z1 cos z2 + j_n cosh z1 sin z2
//   cosh a = cosh z1 cos z2 + j_n sinh z1 sin z2
//   exp a  = exp z1 (cos z2 + j_n sin z2)
// bottoming out in the real functions. The circular and hyperbolic pairs are
// mutually recursive, so they are computed together.

template <int N>
struct McSinCos {
  Multicomplex<N> sin, cos;
};

template <int N>
McSinCos<N> sincos(const Multicomplex<N>& a);
template <int N>
McSinCos<N> sinhcosh(const Multicomplex<N>& a);

inline McSinCos<0> sincos(const Multicomplex<0>& a) {
  McSinCos<0> r;
  r.sin = std::sin(a[0]);
  r.cos = std::cos(a[0]);
  return r;
}
inline McSinCos<0> sinhcosh(const Multicomplex<0>& a) {
  McSinCos<0> r;
  r.sin = std::sinh(a[0]);
  r.cos = std::cosh(a[0]);
  return r;
}

template <int N>
McSinCos<N> sincos(const Multicomplex<N>& a) {
  const auto z1 = sincos(a.half_lo());
  const auto z2 = sinhcosh(a.half_hi());
  McSinCos<N> r;
  r.sin = join<N>(z1.sin * z2.cos, z1.cos * z2.sin);
  r.cos = join<N>(z1.cos * z2.cos, -(z1.sin * z2.sin));
  return r;
}

template <int N>
McSinCos<N> sinhcosh(const Multicomplex<N>& a) {
  const auto z1 = sinhcosh(a.half_lo());
  const auto z2 = sincos(a.half_hi());
  McSinCos<N> r;
  r.sin = join<N>(z1.sin * z2.cos, z1.cos * z2.sin);
  r.cos = join<N>(z1.cos * z2.cos, z1.sin * z2.sin);
  return r;
}

template <int N>
Multicomplex<N> sin(const Multicomplex<N>& a) { return sincos(a).sin; }
template <int N>
Multicomplex<N> cos(const Multicomplex<N>& a) { return sincos(a).cos; }
template <int N>
Multicomplex<N> sinh(const Multicomplex<N>& a) { return sinhcosh(a).sin; }
template <int N>
Multicomplex<N> cosh(const Multicomplex<N>& a) { return sinhcosh(a).cos; }

template <int N>
Multicomplex<N> tan(const Multicomplex<N>& a) {
  const auto sc = sincos(a);
  return sc.sin * inv(sc.cos);  // NotInvertible near odd multiples of pi/2
}

inline Multicomplex<0> exp(const Multicomplex<0>& a) { return std::exp(a[0]); }

template <int N>
Multicomplex<N> exp(const Multicomplex<N>& a) {
  const auto e1 = exp(a.half_lo());
  const auto z2 = sincos(a.half_hi());
  return join<N>(e1 * z2.cos, e1 * z2.sin);
}

// Newton iterations seeded from the real part. Adequate wherever the value is
// a perturbation of a positive real, which is how spectra and coefficient
// magnitudes arise here.
template <int N>
Multicomplex<N> sqrt(const Multicomplex<N>& a) {
  if constexpr (N == 0) {
    if (a[0] < 0.0) throw Error("multicomplex sqrt: negative real part");
    return std::sqrt(a[0]);
  } else {
    if (a[0] <= 0.0) throw Error("multicomplex sqrt: real part must be positive");
    Multicomplex<N> x(std::sqrt(a[0]));
    for (int it = 0; it < 48; ++it) {
      const Multicomplex<N> nx = 0.5 * (x + a * inv(x));
      double delta = 0.0, scale = 0.0;
      for (unsigned s = 0; s < Multicomplex<N>::size; ++s) {
        delta = std::max(delta, std::fabs(nx[s] - x[s]));
        scale = std::max(scale, std::fabs(nx[s]));
      }
      x = nx;
      if (delta <= 1e-16 * std::max(scale, 1e-300)) break;
    }
    return x;
  }
}

template <int N>
Multicomplex<N> log(const Multicomplex<N>& a) {
  if constexpr (N == 0) {
    if (a[0] <= 0.0) throw Error("multicomplex log: real part must be positive");
    return std::log(a[0]);
  } else {
    if (a[0] <= 0.0) throw Error("multicomplex log: real part must be positive");
    Multicomplex<N> x(std::log(a[0]));
    for (int it = 0; it < 48; ++it) {
      // Newton on exp(x) = a:  x <- x + a*exp(-x) - 1
      const Multicomplex<N> step = a * exp(-x) - 1.0;
      x += step;
      double delta = 0.0;
      for (unsigned s = 0; s < Multicomplex<N>::size; ++s) delta = std::max(delta, std::fabs(step[s]));
      if (delta <= 1e-16) break;
    }
    return x;
  }
}

template <int N>
Multicomplex<N> pow(const Multicomplex<N>& a, int e) {
  if (e < 0) return inv(pow(a, -e));
  Multicomplex<N> r(1.0), b = a;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

// Debug format: "a + b*j1 + c*j2 + d*j12 + ..." in ascending bitmask order.
template <int N>
std::ostream& operator<<(std::ostream& os, const Multicomplex<N>& a) {
  os << a[0];
  for (unsigned s = 1; s < Multicomplex<N>::size; ++s) {
    const double c = a[s];
    os << (std::signbit(c) ? " - " : " + ") << std::fabs(c) << "*" << ImaginaryIndex(s).label();
  }
  return os;
}

}  // namespace mcfdtd
