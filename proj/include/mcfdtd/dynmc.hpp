#pragma once

// Runtime-order multicomplex value. Same algebra as Multicomplex<N>,
// dispatched into the compile-time kernels, for places where the order
// is only known at run time: derivative extraction, spectra, bindings.

#include <string>
#include <vector>

#include "mcfdtd/multicomplex.hpp"

namespace mcfdtd {

namespace detail {

template <class F>
decltype(auto) dispatch_order(int n, F&& f) {
  switch (n) {
    case 0: return f(std::integral_constant<int, 0>{});
    case 1: return f(std::integral_constant<int, 1>{});
    case 2: return f(std::integral_constant<int, 2>{});
    case 3: return f(std::integral_constant<int, 3>{});
    case 4: return f(std::integral_constant<int, 4>{});
    case 5: return f(std::integral_constant<int, 5>{});
    case 6: return f(std::integral_constant<int, 6>{});
    case 7: return f(std::integral_constant<int, 7>{});
    case 8: return f(std::integral_constant<int, 8>{});
    default: throw Error("multicomplex order out of range: " + std::to_string(n));
  }
}

}  // namespace detail

class DynMc {
 public:
  DynMc() : order_(0), c_(1, 0.0) {}
  DynMc(double re) : order_(0), c_(1, re) {}  // NOLINT: implicit by design
  DynMc(int order, std::vector<double> coeffs);

  static DynMc from_real(double x, int order);
  static DynMc unit(int k, double scale = 1.0);  // order k value j_k * scale

  template <int N>
  static DynMc from(const Multicomplex<N>& v) {
    return DynMc(N, std::vector<double>(v.data(), v.data() + Multicomplex<N>::size));
  }

  template <int N>
  Multicomplex<N> as() const {
    Multicomplex<N> r;
    const unsigned n = size() < Multicomplex<N>::size ? size() : Multicomplex<N>::size;
    for (unsigned s = 0; s < n; ++s) r[s] = c_[s];
    return r;
  }

  int order() const { return order_; }
  unsigned size() const { return 1u << order_; }
  double operator[](unsigned mask) const { return c_[mask]; }
  double& operator[](unsigned mask) { return c_[mask]; }
  double real() const { return c_[0]; }
  double imag(ImaginaryIndex idx) const;
  const std::vector<double>& coeffs() const { return c_; }

  DynMc promoted(int order) const;

  std::string str() const;

  friend DynMc operator+(const DynMc& a, const DynMc& b);
  friend DynMc operator-(const DynMc& a, const DynMc& b);
  friend DynMc operator-(const DynMc& a);
  friend DynMc operator*(const DynMc& a, const DynMc& b);
  friend DynMc operator/(const DynMc& a, const DynMc& b);
  DynMc& operator+=(const DynMc& o) { return *this = *this + o; }
  DynMc& operator-=(const DynMc& o) { return *this = *this - o; }
  DynMc& operator*=(const DynMc& o) { return *this = *this * o; }

 private:
  int order_;
  std::vector<double> c_;
};

DynMc inv(const DynMc& a);
DynMc sin(const DynMc& a);
DynMc cos(const DynMc& a);
DynMc tan(const DynMc& a);
DynMc exp(const DynMc& a);
DynMc sinh(const DynMc& a);
DynMc cosh(const DynMc& a);
DynMc sqrt(const DynMc& a);
DynMc log(const DynMc& a);
DynMc pow(const DynMc& a, int e);

std::ostream& operator<<(std::ostream& os, const DynMc& a);

}  // namespace mcfdtd
