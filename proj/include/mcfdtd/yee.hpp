#pragma once

// Shared mesh/domain vocabulary for the 2-D and 3-D steppers.

#include <string>
#include <vector>

#include "mcfdtd/errors.hpp"

namespace mcfdtd {

// Inclusive cell-index range.
struct IndexRange {
  int lo = 0;
  int hi = -1;  // empty by default

  bool empty() const { return hi < lo; }
  int count() const { return empty() ? 0 : hi - lo + 1; }
  bool contains(int i) const { return i >= lo && i <= hi; }
  bool within(int n) const { return lo >= 0 && hi < n; }
  bool overlaps(const IndexRange& o) const { return !empty() && !o.empty() && lo <= o.hi && o.lo <= hi; }
};

struct CellBox {
  IndexRange i, m, k;

  bool within(int nx, int ny, int nz) const { return i.within(nx) && m.within(ny) && k.within(nz); }
  bool overlaps(const CellBox& o) const {
    return i.overlaps(o.i) && m.overlaps(o.m) && k.overlaps(o.k);
  }
  bool contains(int ci, int cm, int ck) const { return i.contains(ci) && m.contains(cm) && k.contains(ck); }
};

enum class Axis { kX, kY, kZ };

inline const char* axis_name(Axis a) {
  switch (a) {
    case Axis::kX: return "x";
    case Axis::kY: return "y";
    case Axis::kZ: return "z";
  }
  return "?";
}

enum class BoundaryKind { kPec, kMur1 };

struct BoundarySet {
  BoundaryKind x_lo = BoundaryKind::kPec, x_hi = BoundaryKind::kPec;
  BoundaryKind y_lo = BoundaryKind::kPec, y_hi = BoundaryKind::kPec;
  BoundaryKind z_lo = BoundaryKind::kPec, z_hi = BoundaryKind::kPec;

  bool all_pec() const {
    return x_lo == BoundaryKind::kPec && x_hi == BoundaryKind::kPec && y_lo == BoundaryKind::kPec &&
           y_hi == BoundaryKind::kPec && z_lo == BoundaryKind::kPec && z_hi == BoundaryKind::kPec;
  }
};

struct MaterialRegion {
  double eps_r = 1.0;
  CellBox cells;
};

struct MaterialSpec {
  double background_eps_r = 1.0;
  std::vector<MaterialRegion> regions;
};

template <class T>
class Array2 {
 public:
  Array2() = default;
  Array2(int nx, int ny, const T& init = T{}) : nx_(nx), ny_(ny), v_(std::size_t(nx) * ny, init) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  T& at(int i, int m) { return v_[std::size_t(i) * ny_ + m]; }
  const T& at(int i, int m) const { return v_[std::size_t(i) * ny_ + m]; }
  std::vector<T>& raw() { return v_; }
  const std::vector<T>& raw() const { return v_; }

 private:
  int nx_ = 0, ny_ = 0;
  std::vector<T> v_;
};

template <class T>
class Array3 {
 public:
  Array3() = default;
  Array3(int nx, int ny, int nz, const T& init = T{})
      : nx_(nx), ny_(ny), nz_(nz), v_(std::size_t(nx) * ny * nz, init) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  T& at(int i, int m, int k) { return v_[(std::size_t(i) * ny_ + m) * nz_ + k]; }
  const T& at(int i, int m, int k) const { return v_[(std::size_t(i) * ny_ + m) * nz_ + k]; }
  std::vector<T>& raw() { return v_; }
  const std::vector<T>& raw() const { return v_; }

 private:
  int nx_ = 0, ny_ = 0, nz_ = 0;
  std::vector<T> v_;
};

// Physical constants (SI).
inline constexpr double kC0 = 299792458.0;            // speed of light, m/s
inline constexpr double kEps0 = 8.8541878128e-12;     // vacuum permittivity, F/m
inline constexpr double kMu0 = 1.0 / (kEps0 * kC0 * kC0);  // vacuum permeability, H/m

}  // namespace mcfdtd
