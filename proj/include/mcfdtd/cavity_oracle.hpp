#pragma once

// Closed-form TE-mode fields of a rectangular PEC cavity and their
// first/second partial derivatives with respect to the cavity dimensions.
// Serves as the analytic reference for the 2-D solver:
//
//   Ez(x,y,t) = E0 sin(m pi x / a) sin(n pi y / b) cos(2 pi f t),
//   f = 1/(2 sqrt(eps0 mu0 eps_r)) sqrt((m/a)^2 + (n/b)^2)
//
// The derivative forms below follow by product/chain rule; the time
// factors grow linearly and quadratically in t through df/da, df/db.

#include <vector>

#include "mcfdtd/yee.hpp"

namespace mcfdtd {

struct CavityMode {
  double a = 0.15;   // width (m)
  double b = 0.10;   // height (m)
  int m = 1, n = 1;  // mode indices
  double e0 = 1.0;   // amplitude (V/m)
  double eps_r = 1.0;

  double frequency() const;
  double df_da() const;
  double df_db() const;
  double d2f_da2() const;
  double d2f_db2() const;
  double d2f_dadb() const;

  struct FieldDerivs {
    double ez = 0;
    double d_da = 0, d_db = 0;
    double d2_dadb = 0, d2_da2 = 0, d2_db2 = 0;
  };

  double ez(double x, double y, double t) const;
  FieldDerivs eval(double x, double y, double t) const;
};

// Separable evaluation of one derivative component over a fixed set of
// sample abscissae, for streaming full-grid comparisons: axis factors are
// cached once, time factors once per step.
class CavityDerivTable {
 public:
  enum class Component { kEz, kDa, kDb, kDaDb };

  CavityDerivTable(const CavityMode& mode, Component comp, std::vector<double> xs, std::vector<double> ys);

  void set_time(double t);
  double value(std::size_t ix, std::size_t iy) const;
  std::size_t nx() const { return sx_.size(); }
  std::size_t ny() const { return sy_.size(); }

 private:
  CavityMode mode_;
  Component comp_;
  std::vector<double> sx_, cxa_;  // S_x and dS_x/da per abscissa
  std::vector<double> sy_, cyb_;
  double t_ = 0, tt_ = 0, ta_ = 0, tb_ = 0, tab_ = 0;  // time factors at the current step
};

}  // namespace mcfdtd
