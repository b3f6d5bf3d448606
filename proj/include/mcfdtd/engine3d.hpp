#pragma once

// 3-D Yee stepper (Ex..Hz) in multicomplex arithmetic. Cell sizes are
// full per-cell arrays so local bands can be stretched the way the 2-D
// engine stretches whole columns. PEC sheet patches model microstrip
// metallization; open faces use a first-order one-way (Mur) update with
// nominal real cell sizes and the local wave speed.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "mcfdtd/multicomplex.hpp"
#include "mcfdtd/perturbation.hpp"
#include "mcfdtd/simconfig.hpp"
#include "mcfdtd/yee.hpp"

namespace mcfdtd {

template <int N>
class Engine3D {
 public:
  using MC = Multicomplex<N>;

  explicit Engine3D(const SimulationConfig& cfg, const RealShifts* real_shifts = nullptr) : cfg_(cfg) {
    if (cfg.dim != 3) throw ConfigError(cfg.name + ": Engine3D needs dim == 3");
    nx_ = cfg.nx;
    ny_ = cfg.ny;
    nz_ = cfg.nz;
    dt_ = cfg.resolve_dt();
    divergence_limit_ = cfg.divergence_limit;

    dx_ = Array3<MC>(nx_, ny_, nz_, MC(cfg.dx));
    dy_ = Array3<MC>(nx_, ny_, nz_, MC(cfg.dy));
    dz_ = Array3<MC>(nx_, ny_, nz_, MC(cfg.dz));
    eps_ = Array3<MC>(nx_, ny_, nz_, MC(cfg.materials.background_eps_r));
    for (const auto& region : cfg.materials.regions)
      for_box(region.cells, [&](int i, int m, int k) { eps_.at(i, m, k) = MC(region.eps_r); });

    apply_perturbations(real_shifts);
    check_cfl();
    build_coefficients();
    alloc_fields();
  }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  double dt() const { return dt_; }
  int step_index() const { return step_; }
  double time() const { return step_ * dt_; }

  const MC& ex(int i, int m, int k) const { return ex_.at(i, m, k); }
  const MC& ey(int i, int m, int k) const { return ey_.at(i, m, k); }
  const MC& ez(int i, int m, int k) const { return ez_.at(i, m, k); }
  const MC& hx(int i, int m, int k) const { return hx_.at(i, m, k); }
  const MC& hy(int i, int m, int k) const { return hy_.at(i, m, k); }
  const MC& hz(int i, int m, int k) const { return hz_.at(i, m, k); }
  MC& mutable_ez(int i, int m, int k) { return ez_.at(i, m, k); }

  void step() {
    update_h();
    save_mur_neighbors();
    update_e();
    apply_mur();
    enforce_pec_faces();
    apply_pec_patches();
    ++step_;
    inject_sources();
    if ((step_ & 63) == 0) check_divergence();
  }

  MC probe_value(const ProbeSpec& p) const {
    if (p.kind == ProbeSpec::Kind::kPortVoltage) return port_voltage(p);
    if (p.component == "Ez") return ez_.at(p.i, p.m, p.k);
    if (p.component == "Ex") return ex_.at(p.i, p.m, p.k);
    if (p.component == "Ey") return ey_.at(p.i, p.m, p.k);
    if (p.component == "Hx") return hx_.at(p.i, p.m, p.k);
    if (p.component == "Hy") return hy_.at(p.i, p.m, p.k);
    if (p.component == "Hz") return hz_.at(p.i, p.m, p.k);
    throw Error("unknown probe component '" + p.component + "'");
  }

  // v = -sum_k Ez(center, m_plane, k) * dz(center, m_plane, k) over the
  // substrate cells beneath the strip centerline.
  MC port_voltage(const ProbeSpec& p) const {
    const int ic = (p.strip_i.lo + p.strip_i.hi) / 2;
    MC v(0.0);
    for (int k = p.substrate_k.lo; k <= p.substrate_k.hi; ++k)
      v += ez_.at(ic, p.m_plane, k) * dz_.at(ic, p.m_plane, k);
    return -v;
  }

 private:
  template <class F>
  void for_box(const CellBox& box, F&& f) {
    for (int i = box.i.lo; i <= box.i.hi; ++i)
      for (int m = box.m.lo; m <= box.m.hi; ++m)
        for (int k = box.k.lo; k <= box.k.hi; ++k) f(i, m, k);
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
      if (par.kind == PerturbationKind::kMaterialEps) {
        if (use_real) {
          for_box(par.target, [&](int i, int m, int k) { eps_.at(i, m, k) += real_delta; });
        } else {
          const MC shift = par.template eps_shift<N>();
          for_box(par.target, [&](int i, int m, int k) {
            check_clean(eps_.at(i, m, k), par);
            eps_.at(i, m, k) += shift;
          });
        }
        continue;
      }
      Array3<MC>& cells = par.axis == Axis::kX ? dx_ : par.axis == Axis::kY ? dy_ : dz_;
      if (use_real) {
        for_box(par.target,
                [&](int i, int m, int k) { cells.at(i, m, k) = cells.at(i, m, k) * (1.0 + real_delta); });
        if (par.compensate)
          for_box(par.neighbor_band(),
                  [&](int i, int m, int k) { cells.at(i, m, k) = cells.at(i, m, k) * (1.0 - real_delta); });
        continue;
      }
      const auto fp = par.template stretch_factor<N>(+1.0);
      const auto fm = par.template stretch_factor<N>(-1.0);
      for_box(par.target, [&](int i, int m, int k) {
        check_clean(cells.at(i, m, k), par);
        cells.at(i, m, k) = cells.at(i, m, k) * fp;
      });
      if (par.compensate)
        for_box(par.neighbor_band(), [&](int i, int m, int k) {
          check_clean(cells.at(i, m, k), par);
          cells.at(i, m, k) = cells.at(i, m, k) * fm;
        });
    }
  }

  void check_clean(const MC& v, const ParameterPerturbation& par) const {
    if constexpr (N > 0) {
      for (int u = par.first_unit; u < par.first_unit + par.order; ++u)
        if (v[1u << (u - 1)] != 0.0)
          throw Error("perturbation '" + par.name + "': target cells already perturbed");
    } else {
      (void)v;
      (void)par;
    }
  }

  void check_cfl() const {
    double mdx = 1e300, mdy = 1e300, mdz = 1e300;
    for (const auto& v : dx_.raw()) mdx = std::min(mdx, v.real());
    for (const auto& v : dy_.raw()) mdy = std::min(mdy, v.real());
    for (const auto& v : dz_.raw()) mdz = std::min(mdz, v.real());
    if (mdx <= 0 || mdy <= 0 || mdz <= 0)
      throw ConfigError(cfg_.name + ": non-positive cell size after perturbation");
    const double limit =
        1.0 / (kC0 * std::sqrt(1.0 / (mdx * mdx) + 1.0 / (mdy * mdy) + 1.0 / (mdz * mdz)));
    if (dt_ > limit * (1.0 + 1e-12))
      throw ConfigError(cfg_.name + ": dt violates the CFL bound of the shifted mesh");
  }

  // eps at an E-edge: average over the four touching cells (clamped at
  // domain faces). Quasi-static interface averaging, as in standard
  // microstrip FDTD treatments.
  MC eps_at_ex(int i, int m, int k) const {
    const int m0 = std::max(m - 1, 0), m1 = std::min(m, ny_ - 1);
    const int k0 = std::max(k - 1, 0), k1 = std::min(k, nz_ - 1);
    return 0.25 * (eps_.at(i, m0, k0) + eps_.at(i, m1, k0) + eps_.at(i, m0, k1) + eps_.at(i, m1, k1));
  }
  MC eps_at_ey(int i, int m, int k) const {
    const int i0 = std::max(i - 1, 0), i1 = std::min(i, nx_ - 1);
    const int k0 = std::max(k - 1, 0), k1 = std::min(k, nz_ - 1);
    return 0.25 * (eps_.at(i0, m, k0) + eps_.at(i1, m, k0) + eps_.at(i0, m, k1) + eps_.at(i1, m, k1));
  }
  MC eps_at_ez(int i, int m, int k) const {
    const int i0 = std::max(i - 1, 0), i1 = std::min(i, nx_ - 1);
    const int m0 = std::max(m - 1, 0), m1 = std::min(m, ny_ - 1);
    return 0.25 * (eps_.at(i0, m0, k) + eps_.at(i1, m0, k) + eps_.at(i0, m1, k) + eps_.at(i1, m1, k));
  }

  // dual (node-centered) spacings, clamped at the domain faces
  MC dual_dx(int i, int m, int k) const {
    const int il = std::max(i - 1, 0), ir = std::min(i, nx_ - 1);
    return 0.5 * (dx_.at(il, m, k) + dx_.at(ir, m, k));
  }
  MC dual_dy(int i, int m, int k) const {
    const int ml = std::max(m - 1, 0), mr = std::min(m, ny_ - 1);
    return 0.5 * (dy_.at(i, ml, k) + dy_.at(i, mr, k));
  }
  MC dual_dz(int i, int m, int k) const {
    const int kl = std::max(k - 1, 0), kr = std::min(k, nz_ - 1);
    return 0.5 * (dz_.at(i, m, kl) + dz_.at(i, m, kr));
  }

  void build_coefficients() {
    const double ce = dt_ / kEps0, ch = dt_ / kMu0;

    cexy_ = Array3<MC>(nx_, ny_ + 1, nz_ + 1);
    cexz_ = Array3<MC>(nx_, ny_ + 1, nz_ + 1);
    for (int i = 0; i < nx_; ++i)
      for (int m = 1; m < ny_; ++m)
        for (int k = 1; k < nz_; ++k) {
          const MC e = eps_at_ex(i, m, k);
          cexy_.at(i, m, k) = ce * inv(e * dual_dy(i, m, k));
          cexz_.at(i, m, k) = ce * inv(e * dual_dz(i, m, k));
        }

    ceyx_ = Array3<MC>(nx_ + 1, ny_, nz_ + 1);
    ceyz_ = Array3<MC>(nx_ + 1, ny_, nz_ + 1);
    for (int i = 1; i < nx_; ++i)
      for (int m = 0; m < ny_; ++m)
        for (int k = 1; k < nz_; ++k) {
          const MC e = eps_at_ey(i, m, k);
          ceyz_.at(i, m, k) = ce * inv(e * dual_dz(i, m, k));
          ceyx_.at(i, m, k) = ce * inv(e * dual_dx(i, m, k));
        }

    cezx_ = Array3<MC>(nx_ + 1, ny_ + 1, nz_);
    cezy_ = Array3<MC>(nx_ + 1, ny_ + 1, nz_);
    for (int i = 1; i < nx_; ++i)
      for (int m = 1; m < ny_; ++m)
        for (int k = 0; k < nz_; ++k) {
          const MC e = eps_at_ez(i, m, k);
          cezx_.at(i, m, k) = ce * inv(e * dual_dx(i, m, k));
          cezy_.at(i, m, k) = ce * inv(e * dual_dy(i, m, k));
        }

    // H faces sit between two cells along one axis; the in-plane spacings
    // are averaged over that cell pair (clamped at the walls).
    chxy_ = Array3<MC>(nx_ + 1, ny_, nz_);
    chxz_ = Array3<MC>(nx_ + 1, ny_, nz_);
    for (int i = 0; i <= nx_; ++i)
      for (int m = 0; m < ny_; ++m)
        for (int k = 0; k < nz_; ++k) {
          const int il = std::max(i - 1, 0), ir = std::min(i, nx_ - 1);
          chxy_.at(i, m, k) = ch * inv(0.5 * (dy_.at(il, m, k) + dy_.at(ir, m, k)));
          chxz_.at(i, m, k) = ch * inv(0.5 * (dz_.at(il, m, k) + dz_.at(ir, m, k)));
        }
    chyx_ = Array3<MC>(nx_, ny_ + 1, nz_);
    chyz_ = Array3<MC>(nx_, ny_ + 1, nz_);
    for (int i = 0; i < nx_; ++i)
      for (int m = 0; m <= ny_; ++m)
        for (int k = 0; k < nz_; ++k) {
          const int ml = std::max(m - 1, 0), mr = std::min(m, ny_ - 1);
          chyx_.at(i, m, k) = ch * inv(0.5 * (dx_.at(i, ml, k) + dx_.at(i, mr, k)));
          chyz_.at(i, m, k) = ch * inv(0.5 * (dz_.at(i, ml, k) + dz_.at(i, mr, k)));
        }
    chzx_ = Array3<MC>(nx_, ny_, nz_ + 1);
    chzy_ = Array3<MC>(nx_, ny_, nz_ + 1);
    for (int i = 0; i < nx_; ++i)
      for (int m = 0; m < ny_; ++m)
        for (int k = 0; k <= nz_; ++k) {
          const int kl = std::max(k - 1, 0), kr = std::min(k, nz_ - 1);
          chzx_.at(i, m, k) = ch * inv(0.5 * (dx_.at(i, m, kl) + dx_.at(i, m, kr)));
          chzy_.at(i, m, k) = ch * inv(0.5 * (dy_.at(i, m, kl) + dy_.at(i, m, kr)));
        }

    // Mur coefficients use nominal real spacings and the local wave speed.
    mur_enabled_ = !cfg_.boundaries.all_pec();
    if (cfg_.boundaries.x_lo == BoundaryKind::kMur1 || cfg_.boundaries.x_hi == BoundaryKind::kMur1 ||
        cfg_.boundaries.z_lo == BoundaryKind::kMur1)
      throw ConfigError(cfg_.name + ": open boundaries are supported on y faces and the top z face");
  }

  void alloc_fields() {
    ex_ = Array3<MC>(nx_, ny_ + 1, nz_ + 1);
    ey_ = Array3<MC>(nx_ + 1, ny_, nz_ + 1);
    ez_ = Array3<MC>(nx_ + 1, ny_ + 1, nz_);
    hx_ = Array3<MC>(nx_ + 1, ny_, nz_);
    hy_ = Array3<MC>(nx_, ny_ + 1, nz_);
    hz_ = Array3<MC>(nx_, ny_, nz_ + 1);
    if (cfg_.boundaries.y_lo == BoundaryKind::kMur1 || cfg_.boundaries.y_hi == BoundaryKind::kMur1) {
      mur_y_prev_ex_lo_ = Array2<MC>(nx_, nz_ + 1);
      mur_y_prev_ez_lo_ = Array2<MC>(nx_ + 1, nz_);
      mur_y_prev_ex_hi_ = Array2<MC>(nx_, nz_ + 1);
      mur_y_prev_ez_hi_ = Array2<MC>(nx_ + 1, nz_);
    }
    if (cfg_.boundaries.z_hi == BoundaryKind::kMur1) {
      mur_z_prev_ex_ = Array2<MC>(nx_, ny_ + 1);
      mur_z_prev_ey_ = Array2<MC>(nx_ + 1, ny_);
    }
    apply_pec_patches();
  }

  void update_h() {
    for (int i = 0; i <= nx_; ++i)
      for (int m = 0; m < ny_; ++m)
        for (int k = 0; k < nz_; ++k)
          hx_.at(i, m, k) -= chxy_.at(i, m, k) * (ez_.at(i, m + 1, k) - ez_.at(i, m, k)) -
                             chxz_.at(i, m, k) * (ey_.at(i, m, k + 1) - ey_.at(i, m, k));
    for (int i = 0; i < nx_; ++i)
      for (int m = 0; m <= ny_; ++m)
        for (int k = 0; k < nz_; ++k)
          hy_.at(i, m, k) -= chyz_.at(i, m, k) * (ex_.at(i, m, k + 1) - ex_.at(i, m, k)) -
                             chyx_.at(i, m, k) * (ez_.at(i + 1, m, k) - ez_.at(i, m, k));
    for (int i = 0; i < nx_; ++i)
      for (int m = 0; m < ny_; ++m)
        for (int k = 0; k <= nz_; ++k)
          hz_.at(i, m, k) -= chzx_.at(i, m, k) * (ey_.at(i + 1, m, k) - ey_.at(i, m, k)) -
                             chzy_.at(i, m, k) * (ex_.at(i, m + 1, k) - ex_.at(i, m, k));
  }

  void update_e() {
    for (int i = 0; i < nx_; ++i)
      for (int m = 1; m < ny_; ++m)
        for (int k = 1; k < nz_; ++k)
          ex_.at(i, m, k) += cexy_.at(i, m, k) * (hz_.at(i, m, k) - hz_.at(i, m - 1, k)) -
                             cexz_.at(i, m, k) * (hy_.at(i, m, k) - hy_.at(i, m, k - 1));
    for (int i = 1; i < nx_; ++i)
      for (int m = 0; m < ny_; ++m)
        for (int k = 1; k < nz_; ++k)
          ey_.at(i, m, k) += ceyz_.at(i, m, k) * (hx_.at(i, m, k) - hx_.at(i, m, k - 1)) -
                             ceyx_.at(i, m, k) * (hz_.at(i, m, k) - hz_.at(i - 1, m, k));
    for (int i = 1; i < nx_; ++i)
      for (int m = 1; m < ny_; ++m)
        for (int k = 0; k < nz_; ++k)
          ez_.at(i, m, k) += cezx_.at(i, m, k) * (hy_.at(i, m, k) - hy_.at(i - 1, m, k)) -
                             cezy_.at(i, m, k) * (hx_.at(i, m, k) - hx_.at(i, m - 1, k));
  }

  void save_mur_neighbors() {
    if (!mur_enabled_) return;
    if (cfg_.boundaries.y_lo == BoundaryKind::kMur1) {
      for (int i = 0; i < nx_; ++i)
        for (int k = 0; k <= nz_; ++k) mur_y_prev_ex_lo_.at(i, k) = ex_.at(i, 1, k);
      for (int i = 0; i <= nx_; ++i)
        for (int k = 0; k < nz_; ++k) mur_y_prev_ez_lo_.at(i, k) = ez_.at(i, 1, k);
    }
    if (cfg_.boundaries.y_hi == BoundaryKind::kMur1) {
      for (int i = 0; i < nx_; ++i)
        for (int k = 0; k <= nz_; ++k) mur_y_prev_ex_hi_.at(i, k) = ex_.at(i, ny_ - 1, k);
      for (int i = 0; i <= nx_; ++i)
        for (int k = 0; k < nz_; ++k) mur_y_prev_ez_hi_.at(i, k) = ez_.at(i, ny_ - 1, k);
    }
    if (cfg_.boundaries.z_hi == BoundaryKind::kMur1) {
      for (int i = 0; i < nx_; ++i)
        for (int m = 0; m <= ny_; ++m) mur_z_prev_ex_.at(i, m) = ex_.at(i, m, nz_ - 1);
      for (int i = 0; i <= nx_; ++i)
        for (int m = 0; m < ny_; ++m) mur_z_prev_ey_.at(i, m) = ey_.at(i, m, nz_ - 1);
    }
  }

  double mur_k(double local_eps, double spacing) const {
    const double v = kC0 / std::sqrt(local_eps);
    return (v * dt_ - spacing) / (v * dt_ + spacing);
  }

  // First-order one-way update for tangential E on an open face:
  //   Eb^{ n+1 } = En^n + K (En^{n+1} - Eb^n)
  void apply_mur() {
    if (!mur_enabled_) return;
    if (cfg_.boundaries.y_lo == BoundaryKind::kMur1) {
      for (int i = 0; i < nx_; ++i)
        for (int k = 0; k <= nz_; ++k) {
          const double kk = mur_k(eps_at_ex(i, 1, k).real(), cfg_.dy);
          ex_.at(i, 0, k) = mur_y_prev_ex_lo_.at(i, k) + kk * (ex_.at(i, 1, k) - ex_.at(i, 0, k));
        }
      for (int i = 0; i <= nx_; ++i)
        for (int k = 0; k < nz_; ++k) {
          const double kk = mur_k(eps_at_ez(i, 1, k).real(), cfg_.dy);
          ez_.at(i, 0, k) = mur_y_prev_ez_lo_.at(i, k) + kk * (ez_.at(i, 1, k) - ez_.at(i, 0, k));
        }
    }
    if (cfg_.boundaries.y_hi == BoundaryKind::kMur1) {
      for (int i = 0; i < nx_; ++i)
        for (int k = 0; k <= nz_; ++k) {
          const double kk = mur_k(eps_at_ex(i, ny_ - 1, k).real(), cfg_.dy);
          ex_.at(i, ny_, k) = mur_y_prev_ex_hi_.at(i, k) + kk * (ex_.at(i, ny_ - 1, k) - ex_.at(i, ny_, k));
        }
      for (int i = 0; i <= nx_; ++i)
        for (int k = 0; k < nz_; ++k) {
          const double kk = mur_k(eps_at_ez(i, ny_ - 1, k).real(), cfg_.dy);
          ez_.at(i, ny_, k) = mur_y_prev_ez_hi_.at(i, k) + kk * (ez_.at(i, ny_ - 1, k) - ez_.at(i, ny_, k));
        }
    }
    if (cfg_.boundaries.z_hi == BoundaryKind::kMur1) {
      for (int i = 0; i < nx_; ++i)
        for (int m = 0; m <= ny_; ++m) {
          const double kk = mur_k(1.0, cfg_.dz);
          ex_.at(i, m, nz_) = mur_z_prev_ex_.at(i, m) + kk * (ex_.at(i, m, nz_ - 1) - ex_.at(i, m, nz_));
        }
      for (int i = 0; i <= nx_; ++i)
        for (int m = 0; m < ny_; ++m) {
          const double kk = mur_k(1.0, cfg_.dz);
          ey_.at(i, m, nz_) = mur_z_prev_ey_.at(i, m) + kk * (ey_.at(i, m, nz_ - 1) - ey_.at(i, m, nz_));
        }
    }
  }

  // PEC walls keep their tangential E at zero; Mur face updates touching a
  // shared edge are rolled back here.
  void enforce_pec_faces() {
    if (cfg_.boundaries.x_lo == BoundaryKind::kPec)
      for (int m = 0; m <= ny_; ++m)
        for (int k = 0; k <= nz_; ++k) {
          if (k < nz_) ez_.at(0, m, k) = MC(0.0);
          if (m < ny_) ey_.at(0, m, k) = MC(0.0);
        }
    if (cfg_.boundaries.x_hi == BoundaryKind::kPec)
      for (int m = 0; m <= ny_; ++m)
        for (int k = 0; k <= nz_; ++k) {
          if (k < nz_) ez_.at(nx_, m, k) = MC(0.0);
          if (m < ny_) ey_.at(nx_, m, k) = MC(0.0);
        }
    if (cfg_.boundaries.z_lo == BoundaryKind::kPec)
      for (int i = 0; i <= nx_; ++i)
        for (int m = 0; m <= ny_; ++m) {
          if (i < nx_) ex_.at(i, m, 0) = MC(0.0);
          if (m < ny_) ey_.at(i, m, 0) = MC(0.0);
        }
    if (cfg_.boundaries.z_hi == BoundaryKind::kPec)
      for (int i = 0; i <= nx_; ++i)
        for (int m = 0; m <= ny_; ++m) {
          if (i < nx_) ex_.at(i, m, nz_) = MC(0.0);
          if (m < ny_) ey_.at(i, m, nz_) = MC(0.0);
        }
    if (cfg_.boundaries.y_lo == BoundaryKind::kPec)
      for (int i = 0; i <= nx_; ++i)
        for (int k = 0; k <= nz_; ++k) {
          if (i < nx_) ex_.at(i, 0, k) = MC(0.0);
          if (k < nz_) ez_.at(i, 0, k) = MC(0.0);
        }
    if (cfg_.boundaries.y_hi == BoundaryKind::kPec)
      for (int i = 0; i <= nx_; ++i)
        for (int k = 0; k <= nz_; ++k) {
          if (i < nx_) ex_.at(i, ny_, k) = MC(0.0);
          if (k < nz_) ez_.at(i, ny_, k) = MC(0.0);
        }
  }

  void apply_pec_patches() {
    for (const auto& patch : cfg_.pec_patches) {
      const int k = patch.plane_k;
      for (int i = patch.i.lo; i <= patch.i.hi; ++i)
        for (int m = patch.m.lo; m <= patch.m.hi + 1 && m <= ny_; ++m) ex_.at(i, m, k) = MC(0.0);
      for (int i = patch.i.lo; i <= patch.i.hi + 1 && i <= nx_; ++i)
        for (int m = patch.m.lo; m <= patch.m.hi; ++m) ey_.at(i, m, k) = MC(0.0);
    }
  }

  void inject_sources() {
    const double t = step_ * dt_;
    for (const auto& src : cfg_.sources) {
      if (src.kind != SourceSpec::Kind::kGaussianEz) continue;
      const double g = src.amplitude * std::exp(-std::pow((t - src.delay) / src.half_width, 2));
      for_box(src.cells, [&](int i, int m, int k) { ez_.at(i, m, k) += g; });
    }
  }

  void check_divergence() const {
    for (const auto& v : ez_.raw())
      if (!(std::fabs(v.real()) < divergence_limit_))
        throw DivergedError(cfg_.name + ": |Re Ez| exceeded " + std::to_string(divergence_limit_) +
                            " V/m at step " + std::to_string(step_));
  }

  SimulationConfig cfg_;
  int nx_ = 0, ny_ = 0, nz_ = 0;
  double dt_ = 0;
  double divergence_limit_ = 1e12;
  int step_ = 0;
  bool mur_enabled_ = false;

  Array3<MC> dx_, dy_, dz_, eps_;
  Array3<MC> cexy_, cexz_, ceyx_, ceyz_, cezx_, cezy_;
  Array3<MC> chxy_, chxz_, chyx_, chyz_, chzx_, chzy_;
  Array3<MC> ex_, ey_, ez_, hx_, hy_, hz_;
  Array2<MC> mur_y_prev_ex_lo_, mur_y_prev_ez_lo_, mur_y_prev_ex_hi_, mur_y_prev_ez_hi_;
  Array2<MC> mur_z_prev_ex_, mur_z_prev_ey_;
};

}  // namespace mcfdtd
