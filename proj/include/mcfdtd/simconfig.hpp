#pragma once

// Run description: mesh, materials, boundaries, sources, probes,
// perturbations, derivative requests, and time stepping. Parsed from a
// JSON config file (see README for the schema). Everything is SI.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcfdtd/perturbation.hpp"
#include "mcfdtd/yee.hpp"

namespace mcfdtd {

// Optional real offsets per parameter name: the named perturbations are
// applied as ordinary real shifts (finite-difference baselines) instead
// of imaginary steps.
using RealShifts = std::map<std::string, double>;

struct DtPolicy {
  enum class Kind { kCflFactor, kFixed };
  Kind kind = Kind::kCflFactor;
  double value = 0.95;  // factor, or seconds when fixed
};

struct SourceSpec {
  enum class Kind { kModalInitial, kGaussianEz };
  Kind kind = Kind::kModalInitial;

  // modal initial condition (2-D cavity runs)
  int mode_m = 1, mode_n = 1;
  double amplitude = 1.0;
  bool analytic_h_init = true;  // false: start from H = 0 at t = -dt/2

  // soft Gaussian source added to Ez over a cell box
  double half_width = 15e-12;  // seconds
  double delay = 45e-12;       // seconds
  CellBox cells;
};

struct ProbeSpec {
  enum class Kind { kPoint, kPortVoltage };
  Kind kind = Kind::kPoint;
  std::string name;

  // point probe
  std::string component = "Ez";
  int i = 0, m = 0, k = 0;

  // port voltage: -sum_k Ez(strip-center i, m_plane, k) * dz, k over the
  // substrate cells beneath the strip
  IndexRange strip_i;
  int m_plane = 0;
  IndexRange substrate_k;
};

// Thin PEC sheet: tangential E (Ex, Ey) zeroed on the z-face `plane_k`
// over the given footprint. plane_k = p means the face between cell
// layers p-1 and p.
struct PecPatch {
  int plane_k = 0;
  IndexRange i, m;
};

struct DerivativeRequestSpec {
  std::vector<DerivativeTerm> terms;
};

struct SimulationConfig {
  std::string name;
  int dim = 2;
  int nx = 0, ny = 0, nz = 1;
  double dx = 0, dy = 0, dz = 0;  // nominal cell sizes (m)
  MaterialSpec materials;
  BoundarySet boundaries;
  std::vector<SourceSpec> sources;
  std::vector<ProbeSpec> probes;
  std::vector<PecPatch> pec_patches;
  PerturbationSpec perturbations;
  std::vector<DerivativeRequestSpec> derivatives;
  DtPolicy dt_policy;
  int steps = 0;
  double divergence_limit = 1e12;  // V/m

  std::string config_hash;  // of the source text
  nlohmann::json study;     // free-form block consumed by the study runners

  int order() const { return perturbations.total_order(); }

  // CFL bound from the nominal cell sizes; resolve_dt applies the policy
  // and rejects a fixed dt above the bound.
  double cfl_limit() const;
  double resolve_dt() const;

  void validate() const;

  // Summed nominal length of a geometric parameter's +h band, for
  // converting fractional-stretch derivatives to per-meter ones.
  double geometric_band_length(const ParameterPerturbation& par) const;
  std::vector<std::pair<std::string, double>> geometric_band_lengths() const;
};

/// Parse and validate a config file; ConfigError carries line/field context.
SimulationConfig load_config(const std::string& path);

/// Same, from an in-memory JSON text (hash computed over the text).
SimulationConfig parse_config(const std::string& text, const std::string& origin = "<memory>");

/// FNV-1a 64 of arbitrary bytes, as fixed-width hex.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace mcfdtd
