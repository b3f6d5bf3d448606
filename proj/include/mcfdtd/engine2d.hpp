#pragma once

// 2-D TE (Hx, Hy, Ez) leapfrog stepper on a Yee grid with all field and
// coefficient arrays valued in the multicomplex algebra. Perturbed runs
// evaluate the plain stencil in C^n; the real part is the unperturbed
// solution and the imaginary parts carry derivatives.
//
// Geometry: nx * ny cells, Ez on nodes (i, m), Hx on (i, m+1/2),
// Hy on (i+1/2, m). PEC walls hold boundary Ez at zero. Cell sizes are
// per-axis arrays so edge bands can be stretched.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "mcfdtd/multicomplex.hpp"
#include "mcfdtd/perturbation.hpp"
#include "mcfdtd/simconfig.hpp"
#include "mcfdtd/yee.hpp"

namespace mcfdtd {

namespace detail {

// Stretches cells[r] by (1 + factor) over the + band and (1 - factor) over
// the compensating band, after checking the band is not already perturbed.
template <int N>
void stretch_band(std::vector<Multicomplex<N>>& cells, const IndexRange& plus,
                  const IndexRange& minus, const ParameterPerturbation& par, double real_delta,
                  bool use_real) {
  auto check_clean = [&](int idx) {
    if constexpr (N > 0) {
      for (int u = par.first_unit; u < par.first_unit + par.order; ++u)
        if (cells[idx][1u << (u - 1)] != 0.0)
          throw Error("perturbation '" + par.name + "': target cells already perturbed");
    }
  };
  if (use_real) {
    for (int i = plus.lo; i <= plus.hi; ++i) cells[i] = cells[i] * (1.0 + real_delta);
    if (!minus.empty())
      for (int i = minus.lo; i <= minus.hi; ++i) cells[i] = cells[i] * (1.0 - real_delta);
    return;
  }
  const auto fp = par.template stretch_factor<N>(+1.0);
  const auto fm = par.template stretch_factor<N>(-1.0);
  for (int i = plus.lo; i <= plus.hi; ++i) {
    check_clean(i);
    cells[i] = cells[i] * fp;
  }
  if (!minus.empty())
    for (int i = minus.lo; i <= minus.hi; ++i) {
      check_clean(i);
      cells[i] = cells[i] * fm;
    }
}

}  // namespace detail

template <int N>
class Engine2D {
 public:
  using MC = Multicomplex<N>;

  explicit Engine2D(const SimulationConfig& cfg, const RealShifts* real_shifts = nullptr) : cfg_(cfg) {
    if (cfg.dim != 2) throw ConfigError(cfg.name + ": Engine2D needs dim == 2");
    nx_ = cfg.nx;
    ny_ = cfg.ny;
    dt_ = cfg.resolve_dt();
    divergence_limit_ = cfg.divergence_limit;

    dx_.assign(nx_, MC(cfg.dx));
    dy_.assign(ny_, MC(cfg.dy));
    eps_ = Array2<MC>(nx_, ny_, MC(cfg.materials.background_eps_r));
    for (const auto& region : cfg.materials.regions)
      for (int i = region.cells.i.lo; i <= region.cells.i.hi; ++i)
        for (int m = region.cells.m.lo; m <= region.cells.m.hi; ++m) eps_.at(i, m) = MC(region.eps_r);

    apply_perturbations(real_shifts);
    check_cfl();
    build_positions();
    build_coefficients();

    ez_ = Array2<MC>(nx_ + 1, ny_ + 1);
    hx_ = Array2<MC>(nx_ + 1, ny_);
    hy_ = Array2<MC>(nx_, ny_ + 1);
    for (const auto& src : cfg.sources)
      if (src.kind == SourceSpec::Kind::kModalInitial) init_modal(src);
  }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double dt() const { return dt_; }
  int step_index() const { return step_; }
  double time() const { return step_ * dt_; }

  const MC& ez(int i, int m) const { return ez_.at(i, m); }
  const MC& hx(int i, int m) const { return hx_.at(i, m); }
  const MC& hy(int i, int m) const { return hy_.at(i, m); }
  const Array2<MC>& ez_array() const { return ez_; }
  const Array2<MC>& hx_array() const { return hx_; }
  const Array2<MC>& hy_array() const { return hy_; }
  MC eps_at_node(int i, int m) const { return eps_node(i, m); }
  const std::vector<MC>& dx_cells() const { return dx_; }
  const std::vector<MC>& dy_cells() const { return dy_; }
  const MC& eps_cell(int i, int m) const { return eps_.at(i, m); }

  void step() {
    // H half-step: n-1/2 -> n+1/2 from E at n
    for (int i = 0; i <= nx_; ++i)
      for (int m = 0; m < ny_; ++m) hx_.at(i, m) -= chx_[m] * (ez_.at(i, m + 1) - ez_.at(i, m));
    for (int i = 0; i < nx_; ++i)
      for (int m = 0; m <= ny_; ++m) hy_.at(i, m) += chy_[i] * (ez_.at(i + 1, m) - ez_.at(i, m));
    // E full step: boundary nodes stay at zero (PEC)
    for (int i = 1; i < nx_; ++i)
      for (int m = 1; m < ny_; ++m)
        ez_.at(i, m) += cex_.at(i, m) * (hy_.at(i, m) - hy_.at(i - 1, m)) -
                        cey_.at(i, m) * (hx_.at(i, m) - hx_.at(i, m - 1));
    ++step_;
    inject_sources();
    if ((step_ & 63) == 0) check_divergence();
  }

  MC probe_value(const ProbeSpec& p) const {
    if (p.kind != ProbeSpec::Kind::kPoint) throw Error("2-D runs support point probes only");
    if (p.component == "Ez") return ez_.at(p.i, p.m);
    if (p.component == "Hx") return hx_.at(p.i, p.m);
    if (p.component == "Hy") return hy_.at(p.i, p.m);
    throw Error("unknown 2-D probe component '" + p.component + "'");
  }

 private:
  MC eps_node(int i, int m) const {
    return 0.25 * (eps_.at(i - 1, m - 1) + eps_.at(i, m - 1) + eps_.at(i - 1, m) + eps_.at(i, m));
  }

  void apply_perturbations(const RealShifts* real_shifts) {
    for (const auto& par : cfg_.perturbations.parameters) {
      double real_delta = 0;
      bool use_real = false;
      if (real_shifts) {
        auto it = real_shifts->find(par.name);
        if (it != real_shifts->end()) {
          use_real = true;
          real_delta = it->second;
        }
      }
      if (!use_real && N == 0)
        throw Error("perturbation '" + par.name + "' needs an order-" +
                    std::to_string(cfg_.perturbations.total_order()) + " engine");
      if (par.kind == PerturbationKind::kGeometricLength) {
        const CellBox nb = par.neighbor_band();
        const IndexRange none{0, -1};
        if (par.axis == Axis::kX)
          detail::stretch_band<N>(dx_, par.target.i, par.compensate ? nb.i : none, par, real_delta, use_real);
        else
          detail::stretch_band<N>(dy_, par.target.m, par.compensate ? nb.m : none, par, real_delta, use_real);
      } else {
        if (use_real) {
          for (int i = par.target.i.lo; i <= par.target.i.hi; ++i)
            for (int m = par.target.m.lo; m <= par.target.m.hi; ++m) eps_.at(i, m) += real_delta;
        } else {
          const MC shift = par.template eps_shift<N>();
          for (int i = par.target.i.lo; i <= par.target.i.hi; ++i)
            for (int m = par.target.m.lo; m <= par.target.m.hi; ++m) {
              if constexpr (N > 0) {
                for (int u = par.first_unit; u < par.first_unit + par.order; ++u)
                  if (eps_.at(i, m)[1u << (u - 1)] != 0.0)
                    throw Error("perturbation '" + par.name + "': target cells already perturbed");
              }
              eps_.at(i, m) += shift;
            }
        }
      }
    }
  }

  void check_cfl() const {
    double min_dx = 1e300, min_dy = 1e300;
    for (const auto& v : dx_) min_dx = std::min(min_dx, v.real());
    for (const auto& v : dy_) min_dy = std::min(min_dy, v.real());
    if (min_dx <= 0 || min_dy <= 0) throw ConfigError(cfg_.name + ": non-positive cell size after perturbation");
    const double limit = 1.0 / (kC0 * std::sqrt(1.0 / (min_dx * min_dx) + 1.0 / (min_dy * min_dy)));
    if (dt_ > limit * (1.0 + 1e-12))
      throw ConfigError(cfg_.name + ": dt violates the CFL bound of the shifted mesh");
  }

  void build_positions() {
    x_node_.assign(nx_ + 1, MC(0.0));
    y_node_.assign(ny_ + 1, MC(0.0));
    for (int i = 0; i < nx_; ++i) x_node_[i + 1] = x_node_[i] + dx_[i];
    for (int m = 0; m < ny_; ++m) y_node_[m + 1] = y_node_[m] + dy_[m];
  }

  void build_coefficients() {
    chx_.resize(ny_);
    chy_.resize(nx_);
    for (int m = 0; m < ny_; ++m) chx_[m] = (dt_ / kMu0) * inv(dy_[m]);
    for (int i = 0; i < nx_; ++i) chy_[i] = (dt_ / kMu0) * inv(dx_[i]);
    cex_ = Array2<MC>(nx_ + 1, ny_ + 1);
    cey_ = Array2<MC>(nx_ + 1, ny_ + 1);
    for (int i = 1; i < nx_; ++i)
      for (int m = 1; m < ny_; ++m) {
        const MC en = eps_node(i, m);
        const MC dxn = 0.5 * (dx_[i - 1] + dx_[i]);
        const MC dyn = 0.5 * (dy_[m - 1] + dy_[m]);
        cex_.at(i, m) = (dt_ / kEps0) * inv(en * dxn);
        cey_.at(i, m) = (dt_ / kEps0) * inv(en * dyn);
      }
  }

  void init_modal(const SourceSpec& src) {
    // Uniform material assumed (validated): the mode shape follows the
    // perturbed geometry, so the initial condition carries the geometry
    // derivatives in its imaginary parts.
    for (const auto& region : cfg_.materials.regions)
      if (region.eps_r != cfg_.materials.background_eps_r)
        throw ConfigError(cfg_.name + ": modal initial conditions need uniform materials");
    for (const auto& par : cfg_.perturbations.parameters)
      if (par.kind == PerturbationKind::kMaterialEps &&
          (par.target.i.count() != nx_ || par.target.m.count() != ny_))
        throw ConfigError(cfg_.name + ": modal initial conditions need a uniform eps perturbation");

    const MC a = x_node_[nx_];
    const MC b = y_node_[ny_];
    const MC inv_a = inv(a), inv_b = inv(b);
    const MC eps_uniform = eps_.at(0, 0);
    const double mm = src.mode_m, nn = src.mode_n;
    constexpr double kPi = 3.14159265358979323846;

    const MC kx = (mm * kPi) * inv_a;
    const MC ky = (nn * kPi) * inv_b;
    const MC omega =
        kPi * kC0 * mcfdtd::sqrt((mm * inv_a) * (mm * inv_a) + (nn * inv_b) * (nn * inv_b)) *
        inv(mcfdtd::sqrt(eps_uniform));  // 2*pi*f with f = c/(2 sqrt(eps_r)) sqrt(...)

    // separable axis factors
    std::vector<MC> sx(nx_ + 1), sy(ny_ + 1), sx_half(nx_), sy_half(ny_), cx_half(nx_), cy_half(ny_);
    for (int i = 0; i <= nx_; ++i) sx[i] = mcfdtd::sin(kx * x_node_[i]);
    for (int m = 0; m <= ny_; ++m) sy[m] = mcfdtd::sin(ky * y_node_[m]);
    for (int i = 0; i < nx_; ++i) {
      const MC xh = x_node_[i] + 0.5 * dx_[i];
      const auto sc = mcfdtd::sincos(kx * xh);
      sx_half[i] = sc.sin;
      cx_half[i] = sc.cos;
    }
    for (int m = 0; m < ny_; ++m) {
      const MC yh = y_node_[m] + 0.5 * dy_[m];
      const auto sc = mcfdtd::sincos(ky * yh);
      sy_half[m] = sc.sin;
      cy_half[m] = sc.cos;
    }
    for (int i = 1; i < nx_; ++i)
      for (int m = 1; m < ny_; ++m) ez_.at(i, m) += src.amplitude * sx[i] * sy[m];

    if (src.analytic_h_init) {
      // H at t = -dt/2 for the standing mode:
      //   Hx = -(E0 ky / (mu0 w)) sin(kx x) cos(ky y) sin(w t)
      //   Hy = +(E0 kx / (mu0 w)) cos(kx x) sin(ky y) sin(w t)
      const MC s_half = mcfdtd::sin(omega * (0.5 * dt_));  // sin(w dt/2); sin(-x) = -sin(x)
      const MC amp_x = (src.amplitude / kMu0) * ky * inv(omega) * s_half;
      const MC amp_y = (src.amplitude / kMu0) * kx * inv(omega) * s_half;
      for (int i = 0; i <= nx_; ++i)
        for (int m = 0; m < ny_; ++m) hx_.at(i, m) += amp_x * sx[i] * cy_half[m];
      for (int i = 0; i < nx_; ++i)
        for (int m = 0; m <= ny_; ++m) hy_.at(i, m) -= amp_y * cx_half[i] * sy[m];
    }
  }

  void inject_sources() {
    const double t = step_ * dt_;
    for (const auto& src : cfg_.sources) {
      if (src.kind != SourceSpec::Kind::kGaussianEz) continue;
      const double g = src.amplitude * std::exp(-std::pow((t - src.delay) / src.half_width, 2));
      for (int i = src.cells.i.lo; i <= src.cells.i.hi; ++i)
        for (int m = src.cells.m.lo; m <= src.cells.m.hi; ++m) ez_.at(i, m) += g;
    }
  }

  void check_divergence() const {
    for (const auto& v : ez_.raw())
      if (!(std::fabs(v.real()) < divergence_limit_))
        throw DivergedError(cfg_.name + ": |Re Ez| exceeded " + std::to_string(divergence_limit_) +
                            " V/m at step " + std::to_string(step_));
  }

  SimulationConfig cfg_;
  int nx_ = 0, ny_ = 0;
  double dt_ = 0;
  double divergence_limit_ = 1e12;
  int step_ = 0;

  std::vector<MC> dx_, dy_;
  std::vector<MC> x_node_, y_node_;
  Array2<MC> eps_;
  std::vector<MC> chx_, chy_;
  Array2<MC> cex_, cey_;
  Array2<MC> ez_, hx_, hy_;
};

}  // namespace mcfdtd
