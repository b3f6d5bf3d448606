#include "mcfdtd/cavity_oracle.hpp"

#include <cmath>

namespace mcfdtd {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double CavityMode::frequency() const {
  const double c = kC0 / std::sqrt(eps_r);
  return 0.5 * c * std::sqrt((m / a) * (m / a) + (n / b) * (n / b));
}

double CavityMode::df_da() const {
  const double c2 = kC0 * kC0 / eps_r;
  return -c2 * m * m / (4.0 * a * a * a * frequency());
}

double CavityMode::df_db() const {
  const double c2 = kC0 * kC0 / eps_r;
  return -c2 * n * n / (4.0 * b * b * b * frequency());
}

double CavityMode::d2f_da2() const {
  const double c2 = kC0 * kC0 / eps_r;
  const double f = frequency();
  return 3.0 * c2 * m * m / (4.0 * std::pow(a, 4) * f) -
         c2 * c2 * std::pow(m, 4) / (16.0 * std::pow(a, 6) * f * f * f);
}

double CavityMode::d2f_db2() const {
  const double c2 = kC0 * kC0 / eps_r;
  const double f = frequency();
  return 3.0 * c2 * n * n / (4.0 * std::pow(b, 4) * f) -
         c2 * c2 * std::pow(n, 4) / (16.0 * std::pow(b, 6) * f * f * f);
}

double CavityMode::d2f_dadb() const {
  const double c2 = kC0 * kC0 / eps_r;
  const double f = frequency();
  return -c2 * c2 * m * m * n * n / (16.0 * std::pow(a, 3) * std::pow(b, 3) * f * f * f);
}

double CavityMode::ez(double x, double y, double t) const {
  return e0 * std::sin(m * kPi * x / a) * std::sin(n * kPi * y / b) * std::cos(2.0 * kPi * frequency() * t);
}

CavityMode::FieldDerivs CavityMode::eval(double x, double y, double t) const {
  if (x < 0 || x > a || y < 0 || y > b) throw Error("cavity oracle: point outside the cavity");
  FieldDerivs out;
  const double sx = std::sin(m * kPi * x / a), cx = std::cos(m * kPi * x / a);
  const double sy = std::sin(n * kPi * y / b), cy = std::cos(n * kPi * y / b);

  // axis factors and their dimension derivatives
  const double sx_a = -(m * kPi * x / (a * a)) * cx;
  const double sy_b = -(n * kPi * y / (b * b)) * cy;
  const double sx_aa = (2.0 * m * kPi * x / (a * a * a)) * cx - std::pow(m * kPi * x / (a * a), 2) * sx;
  const double sy_bb = (2.0 * n * kPi * y / (b * b * b)) * cy - std::pow(n * kPi * y / (b * b), 2) * sy;

  // time factor and its dimension derivatives (through omega(a, b))
  const double w = 2.0 * kPi * frequency();
  const double w_a = 2.0 * kPi * df_da(), w_b = 2.0 * kPi * df_db();
  const double w_aa = 2.0 * kPi * d2f_da2(), w_bb = 2.0 * kPi * d2f_db2(), w_ab = 2.0 * kPi * d2f_dadb();
  const double ct = std::cos(w * t), st = std::sin(w * t);
  const double t_v = ct;
  const double t_a = -st * t * w_a;
  const double t_b = -st * t * w_b;
  const double t_ab = -ct * t * t * w_a * w_b - st * t * w_ab;
  const double t_aa = -ct * t * t * w_a * w_a - st * t * w_aa;
  const double t_bb = -ct * t * t * w_b * w_b - st * t * w_bb;

  out.ez = e0 * sx * sy * t_v;
  out.d_da = e0 * (sx_a * sy * t_v + sx * sy * t_a);
  out.d_db = e0 * (sx * sy_b * t_v + sx * sy * t_b);
  out.d2_dadb = e0 * (sx_a * sy_b * t_v + sx_a * sy * t_b + sx * sy_b * t_a + sx * sy * t_ab);
  out.d2_da2 = e0 * (sx_aa * sy * t_v + 2.0 * sx_a * sy * t_a + sx * sy * t_aa);
  out.d2_db2 = e0 * (sx * sy_bb * t_v + 2.0 * sx * sy_b * t_b + sx * sy * t_bb);
  return out;
}

CavityDerivTable::CavityDerivTable(const CavityMode& mode, Component comp, std::vector<double> xs,
                                   std::vector<double> ys)
    : mode_(mode), comp_(comp) {
  sx_.resize(xs.size());
  cxa_.resize(xs.size());
  sy_.resize(ys.size());
  cyb_.resize(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    sx_[i] = std::sin(mode_.m * kPi * x / mode_.a);
    cxa_[i] = -(mode_.m * kPi * x / (mode_.a * mode_.a)) * std::cos(mode_.m * kPi * x / mode_.a);
  }
  for (std::size_t jj = 0; jj < ys.size(); ++jj) {
    const double y = ys[jj];
    sy_[jj] = std::sin(mode_.n * kPi * y / mode_.b);
    cyb_[jj] = -(mode_.n * kPi * y / (mode_.b * mode_.b)) * std::cos(mode_.n * kPi * y / mode_.b);
  }
  set_time(0.0);
}

void CavityDerivTable::set_time(double t) {
  const double w = 2.0 * kPi * mode_.frequency();
  const double w_a = 2.0 * kPi * mode_.df_da(), w_b = 2.0 * kPi * mode_.df_db();
  const double w_ab = 2.0 * kPi * mode_.d2f_dadb();
  const double ct = std::cos(w * t), st = std::sin(w * t);
  t_ = ct;
  ta_ = -st * t * w_a;
  tb_ = -st * t * w_b;
  tab_ = -ct * t * t * w_a * w_b - st * t * w_ab;
  tt_ = t;
}

double CavityDerivTable::value(std::size_t ix, std::size_t iy) const {
  const double e0 = mode_.e0;
  switch (comp_) {
    case Component::kEz:
      return e0 * sx_[ix] * sy_[iy] * t_;
    case Component::kDa:
      return e0 * (cxa_[ix] * sy_[iy] * t_ + sx_[ix] * sy_[iy] * ta_);
    case Component::kDb:
      return e0 * (sx_[ix] * cyb_[iy] * t_ + sx_[ix] * sy_[iy] * tb_);
    case Component::kDaDb:
      return e0 * (cxa_[ix] * cyb_[iy] * t_ + cxa_[ix] * sy_[iy] * tb_ + sx_[ix] * cyb_[iy] * ta_ +
                   sx_[ix] * sy_[iy] * tab_);
  }
  return 0;
}

}  // namespace mcfdtd
