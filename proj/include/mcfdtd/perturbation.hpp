#pragma once

// Declarative binding of named design parameters to imaginary units and
// cell-level modifications: material perturbations add (sum_u j_u) h to
// eps_r over a region; geometric perturbations stretch a cell band by a
// factor (1 + (sum_u j_u) h), with the adjacent band compressed by the
// opposite sign so the total length is conserved (the compensating band
// is optional at a domain boundary, where the wall itself moves).

#include <string>
#include <vector>

#include "mcfdtd/multicomplex.hpp"
#include "mcfdtd/yee.hpp"

namespace mcfdtd {

enum class PerturbationKind { kMaterialEps, kGeometricLength };

struct ParameterPerturbation {
  std::string name;
  PerturbationKind kind = PerturbationKind::kMaterialEps;
  int order = 1;     // number of imaginary units carried by this parameter
  double step = 0;   // h: absolute for eps_r, fractional stretch for lengths
  CellBox target;
  Axis axis = Axis::kX;     // geometric only
  bool compensate = true;   // geometric only: add the paired -h neighbor band

  int first_unit = 0;  // 1-based, set by PerturbationSpec::assign_units

  // The +h band's paired neighbor band (next slab along the axis).
  CellBox neighbor_band() const;

  // 1 + sign * step * sum of assigned units, at order N.
  template <int N>
  Multicomplex<N> stretch_factor(double sign) const {
    Multicomplex<N> f(1.0);
    for (int u = first_unit; u < first_unit + order; ++u) f += Multicomplex<N>::unit(u, sign * step);
    return f;
  }

  // step * sum of assigned units, at order N.
  template <int N>
  Multicomplex<N> eps_shift() const {
    Multicomplex<N> f(0.0);
    for (int u = first_unit; u < first_unit + order; ++u) f += Multicomplex<N>::unit(u, step);
    return f;
  }
};

// The mask/divisor pair extracting one named mixed partial from a
// perturbed run, per the unit-assignment contract.
struct DerivativeIndex {
  ImaginaryIndex mask;
  double step_divisor = 1.0;    // prod h_i^{r_i}
  double length_scale = 1.0;    // prod (nominal stretched length)^{r_i} for geometric params
  int order = 0;
};

// One (parameter, order) pair of a requested mixed partial.
struct DerivativeTerm {
  std::string parameter;
  int order = 1;
};

struct PerturbationSpec {
  std::vector<ParameterPerturbation> parameters;

  bool empty() const { return parameters.empty(); }
  int total_order() const;

  // Assigns units 1..m1 to the first parameter, m1+1..m1+m2 to the second,
  // and so on; validates the unit budget and per-parameter fields.
  void assign_units();

  const ParameterPerturbation* find(const std::string& name) const;

  // Structural validation against a mesh: bounds, overlap between all
  // perturbed/compensating bands and material targets.
  void validate_against(int nx, int ny, int nz, int dim) const;

  // Mask and divisor for a requested multi-index. Sub-maximal orders use
  // the lowest units assigned to each parameter. `nominal_lengths` maps a
  // geometric parameter to the summed nominal length of its +h band and
  // must contain every geometric parameter in the request.
  DerivativeIndex derivative_index(const std::vector<DerivativeTerm>& request,
                                   const std::vector<std::pair<std::string, double>>& nominal_lengths = {}) const;
};

}  // namespace mcfdtd
