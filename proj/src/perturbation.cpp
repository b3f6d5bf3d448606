#include "mcfdtd/perturbation.hpp"

#include <algorithm>

namespace mcfdtd {

CellBox ParameterPerturbation::neighbor_band() const {
  CellBox nb = target;
  switch (axis) {
    case Axis::kX: {
      const int w = target.i.count();
      nb.i = {target.i.hi + 1, target.i.hi + w};
      break;
    }
    case Axis::kY: {
      const int w = target.m.count();
      nb.m = {target.m.hi + 1, target.m.hi + w};
      break;
    }
    case Axis::kZ: {
      const int w = target.k.count();
      nb.k = {target.k.hi + 1, target.k.hi + w};
      break;
    }
  }
  return nb;
}

int PerturbationSpec::total_order() const {
  int p = 0;
  for (const auto& par : parameters) p += par.order;
  return p;
}

void PerturbationSpec::assign_units() {
  int unit = 1;
  for (auto& par : parameters) {
    if (par.name.empty()) throw ConfigError("perturbation parameter without a name");
    if (par.order < 1) throw ConfigError("perturbation '" + par.name + "': order must be >= 1");
    if (!(par.step >= 0)) throw ConfigError("perturbation '" + par.name + "': step must be non-negative");
    for (const auto& other : parameters) {
      if (&other != &par && other.name == par.name)
        throw ConfigError("duplicate perturbation parameter '" + par.name + "'");
    }
    par.first_unit = unit;
    unit += par.order;
  }
  if (unit - 1 > kMaxOrder)
    throw ConfigError("perturbation spec needs " + std::to_string(unit - 1) + " imaginary units, maximum is " +
                      std::to_string(kMaxOrder));
}

const ParameterPerturbation* PerturbationSpec::find(const std::string& name) const {
  for (const auto& par : parameters)
    if (par.name == name) return &par;
  return nullptr;
}

void PerturbationSpec::validate_against(int nx, int ny, int nz, int dim) const {
  std::vector<std::pair<CellBox, const ParameterPerturbation*>> boxes;
  for (const auto& par : parameters) {
    if (!par.target.within(nx, ny, nz))
      throw ConfigError("perturbation '" + par.name + "': target out of bounds");
    if (par.kind == PerturbationKind::kGeometricLength) {
      if (dim == 2 && par.axis == Axis::kZ)
        throw ConfigError("perturbation '" + par.name + "': z-axis stretch in a 2-D run");
      boxes.push_back({par.target, &par});
      if (par.compensate) {
        const CellBox nb = par.neighbor_band();
        if (!nb.within(nx, ny, nz))
          throw ConfigError("perturbation '" + par.name +
                            "': compensating band out of bounds (mark it boundary-edge to drop compensation)");
        boxes.push_back({nb, &par});
      }
    } else {
      boxes.push_back({par.target, &par});
    }
  }
  for (std::size_t a = 0; a < boxes.size(); ++a)
    for (std::size_t b = a + 1; b < boxes.size(); ++b) {
      // material and geometric targets may coincide (different arrays);
      // overlap within a kind is an error
      if (boxes[a].second->kind != boxes[b].second->kind) continue;
      if (boxes[a].second->kind == PerturbationKind::kGeometricLength &&
          boxes[a].second->axis != boxes[b].second->axis)
        continue;
      if (boxes[a].first.overlaps(boxes[b].first))
        throw ConfigError("perturbations '" + boxes[a].second->name + "' and '" + boxes[b].second->name +
                          "' have overlapping cell bands");
    }
}

DerivativeIndex PerturbationSpec::derivative_index(
    const std::vector<DerivativeTerm>& request,
    const std::vector<std::pair<std::string, double>>& nominal_lengths) const {
  DerivativeIndex out;
  unsigned mask = 0;
  for (const auto& term : request) {
    if (term.order == 0) continue;
    const ParameterPerturbation* par = find(term.parameter);
    if (!par) throw Error("derivative request names unknown parameter '" + term.parameter + "'");
    if (term.order < 0 || term.order > par->order)
      throw Error("derivative request order " + std::to_string(term.order) + " exceeds the " +
                  std::to_string(par->order) + " units declared for '" + term.parameter + "'");
    for (int q = 0; q < term.order; ++q) {
      mask |= 1u << (par->first_unit - 1 + q);  // lowest assigned units first
      out.step_divisor *= par->step;
    }
    if (par->kind == PerturbationKind::kGeometricLength) {
      auto it = std::find_if(nominal_lengths.begin(), nominal_lengths.end(),
                             [&](const auto& p) { return p.first == term.parameter; });
      if (it == nominal_lengths.end())
        throw Error("derivative request for geometric parameter '" + term.parameter +
                    "' needs its nominal band length");
      for (int q = 0; q < term.order; ++q) out.length_scale *= it->second;
    }
    out.order += term.order;
  }
  out.mask = ImaginaryIndex(mask);
  return out;
}

}  // namespace mcfdtd
