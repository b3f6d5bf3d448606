#include "mcfdtd/dynmc.hpp"

#include <algorithm>
#include <sstream>

namespace mcfdtd {

namespace {

int max_order(const DynMc& a, const DynMc& b) { return std::max(a.order(), b.order()); }

template <class OpF>
DynMc binary_op(const DynMc& a, const DynMc& b, OpF&& op) {
  const int r = max_order(a, b);
  return detail::dispatch_order(r, [&](auto nc) {
    constexpr int N = decltype(nc)::value;
    return DynMc::from<N>(op(a.as<N>(), b.as<N>()));
  });
}

template <class OpF>
DynMc unary_op(const DynMc& a, OpF&& op) {
  return detail::dispatch_order(a.order(), [&](auto nc) {
    constexpr int N = decltype(nc)::value;
    return DynMc::from<N>(op(a.as<N>()));
  });
}

}  // namespace

DynMc::DynMc(int order, std::vector<double> coeffs) : order_(order), c_(std::move(coeffs)) {
  if (order_ < 0 || order_ > kMaxOrder)
    throw Error("multicomplex order out of range: " + std::to_string(order_));
  if (c_.size() != (1u << order_))
    throw Error("coefficient count " + std::to_string(c_.size()) + " does not match order " +
                std::to_string(order_));
}

DynMc DynMc::from_real(double x, int order) {
  if (order < 0 || order > kMaxOrder)
    throw Error("multicomplex order out of range: " + std::to_string(order));
  std::vector<double> c(1u << order, 0.0);
  c[0] = x;
  return DynMc(order, std::move(c));
}

DynMc DynMc::unit(int k, double scale) {
  if (k < 1 || k > kMaxOrder) throw Error("imaginary unit index out of range: " + std::to_string(k));
  std::vector<double> c(1u << k, 0.0);
  c[1u << (k - 1)] = scale;
  return DynMc(k, std::move(c));
}

double DynMc::imag(ImaginaryIndex idx) const {
  if (idx.mask >= size())
    throw Error("imaginary index " + idx.label() + " out of range for order " + std::to_string(order_));
  return c_[idx.mask];
}

DynMc DynMc::promoted(int order) const {
  if (order < order_) throw Error("cannot demote multicomplex value");
  if (order > kMaxOrder) throw Error("multicomplex order out of range: " + std::to_string(order));
  std::vector<double> c(1u << order, 0.0);
  std::copy(c_.begin(), c_.end(), c.begin());
  return DynMc(order, std::move(c));
}

std::string DynMc::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

DynMc operator+(const DynMc& a, const DynMc& b) {
  return binary_op(a, b, [](const auto& x, const auto& y) { return x + y; });
}
DynMc operator-(const DynMc& a, const DynMc& b) {
  return binary_op(a, b, [](const auto& x, const auto& y) { return x - y; });
}
DynMc operator-(const DynMc& a) {
  return unary_op(a, [](const auto& x) { return -x; });
}
DynMc operator*(const DynMc& a, const DynMc& b) {
  return binary_op(a, b, [](const auto& x, const auto& y) { return x * y; });
}
DynMc operator/(const DynMc& a, const DynMc& b) {
  return binary_op(a, b, [](const auto& x, const auto& y) { return x / y; });
}

DynMc inv(const DynMc& a) {
  return unary_op(a, [](const auto& x) { return inv(x); });
}
DynMc sin(const DynMc& a) {
  return unary_op(a, [](const auto& x) { return sin(x); });
}
DynMc cos(const DynMc& a) {
  return unary_op(a, [](const auto& x) { return cos(x); });
}
DynMc tan(const DynMc& a) {
  return unary_op(a, [](const auto& x) { return tan(x); });
}
DynMc exp(const DynMc& a) {
  return unary_op(a, [](const auto& x) { return exp(x); });
}
DynMc sinh(const DynMc& a) {
  return unary_op(a, [](const auto& x) { return sinh(x); });
}
DynMc cosh(const DynMc& a) {
  return unary_op(a, [](const auto& x) { return cosh(x); });
}
DynMc sqrt(const DynMc& a) {
  return unary_op(a, [](const auto& x) { return sqrt(x); });
}
DynMc log(const DynMc& a) {
  return unary_op(a, [](const auto& x) { return log(x); });
}
DynMc pow(const DynMc& a, int e) {
  return unary_op(a, [e](const auto& x) { return pow(x, e); });
}

std::ostream& operator<<(std::ostream& os, const DynMc& a) {
  return detail::dispatch_order(a.order(), [&](auto nc) -> std::ostream& {
    constexpr int N = decltype(nc)::value;
    return os << a.as<N>();
  });
}

}  // namespace mcfdtd
