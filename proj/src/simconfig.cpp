#include "mcfdtd/simconfig.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace mcfdtd {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ConfigError(origin + ": " + what);
}

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t p = 0; p < byte && p < text.size(); ++p)
    if (text[p] == '\n') ++line;
  return line;
}

IndexRange parse_range(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    fail(origin, field + ": expected [lo, hi]");
  return {j[0].get<int>(), j[1].get<int>()};
}

CellBox parse_box(const json& j, const std::string& origin, const std::string& field) {
  CellBox box;
  if (!j.is_object()) fail(origin, field + ": expected an object with i/m/k ranges");
  box.i = j.contains("i") ? parse_range(j.at("i"), origin, field + ".i") : IndexRange{0, 0};
  box.m = j.contains("m") ? parse_range(j.at("m"), origin, field + ".m") : IndexRange{0, 0};
  box.k = j.contains("k") ? parse_range(j.at("k"), origin, field + ".k") : IndexRange{0, 0};
  return box;
}

BoundaryKind parse_boundary(const json& j, const std::string& origin, const std::string& field) {
  const std::string s = j.get<std::string>();
  if (s == "pec") return BoundaryKind::kPec;
  if (s == "mur1") return BoundaryKind::kMur1;
  fail(origin, field + ": unknown boundary '" + s + "' (expected pec|mur1)");
}

Axis parse_axis(const json& j, const std::string& origin, const std::string& field) {
  const std::string s = j.get<std::string>();
  if (s == "x") return Axis::kX;
  if (s == "y") return Axis::kY;
  if (s == "z") return Axis::kZ;
  fail(origin, field + ": unknown axis '" + s + "'");
}

double require_number(const json& j, const std::string& origin, const std::string& field) {
  if (!j.contains(field)) fail(origin, "missing field '" + field + "'");
  if (!j.at(field).is_number()) fail(origin, "field '" + field + "' must be a number");
  return j.at(field).get<double>();
}

}  // namespace

double SimulationConfig::cfl_limit() const {
  double s = 1.0 / (dx * dx) + 1.0 / (dy * dy);
  if (dim == 3) s += 1.0 / (dz * dz);
  return 1.0 / (kC0 * std::sqrt(s));
}

double SimulationConfig::resolve_dt() const {
  const double limit = cfl_limit();
  if (dt_policy.kind == DtPolicy::Kind::kCflFactor) {
    if (!(dt_policy.value > 0) || dt_policy.value > 1.0)
      throw ConfigError(name + ": cfl_factor must be in (0, 1]");
    return dt_policy.value * limit;
  }
  if (!(dt_policy.value > 0)) throw ConfigError(name + ": fixed dt must be positive");
  if (dt_policy.value > limit * (1.0 + 1e-12))
    throw ConfigError(name + ": fixed dt " + std::to_string(dt_policy.value) +
                      " s violates the CFL bound " + std::to_string(limit) + " s");
  return dt_policy.value;
}

double SimulationConfig::geometric_band_length(const ParameterPerturbation& par) const {
  double nominal = 0;
  switch (par.axis) {
    case Axis::kX: nominal = dx * par.target.i.count(); break;
    case Axis::kY: nominal = dy * par.target.m.count(); break;
    case Axis::kZ: nominal = dz * par.target.k.count(); break;
  }
  return nominal;
}

std::vector<std::pair<std::string, double>> SimulationConfig::geometric_band_lengths() const {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& par : perturbations.parameters)
    if (par.kind == PerturbationKind::kGeometricLength)
      out.push_back({par.name, geometric_band_length(par)});
  return out;
}

void SimulationConfig::validate() const {
  const std::string& o = name.empty() ? std::string("<config>") : name;
  if (dim != 2 && dim != 3) throw ConfigError(o + ": dim must be 2 or 3");
  if (nx < 1 || ny < 1 || (dim == 3 && nz < 1)) throw ConfigError(o + ": mesh cell counts must be positive");
  if (!(dx > 0) || !(dy > 0) || (dim == 3 && !(dz > 0))) throw ConfigError(o + ": cell sizes must be positive");
  if (steps < 0) throw ConfigError(o + ": steps must be non-negative");
  if (materials.background_eps_r < 1.0) throw ConfigError(o + ": background eps_r must be >= 1");
  for (const auto& r : materials.regions) {
    if (r.eps_r < 1.0) throw ConfigError(o + ": material region eps_r must be >= 1");
    if (!r.cells.within(nx, ny, nz)) throw ConfigError(o + ": material region out of bounds");
  }
  if (dim == 2 && !boundaries.all_pec())
    throw ConfigError(o + ": 2-D runs support PEC boundaries only");
  for (const auto& p : probes) {
    if (p.kind == ProbeSpec::Kind::kPoint) {
      if (p.i < 0 || p.i > nx || p.m < 0 || p.m > ny || p.k < 0 || p.k > nz)
        throw ConfigError(o + ": probe '" + p.name + "' out of bounds");
    } else {
      if (dim != 3) throw ConfigError(o + ": port probes are 3-D only");
      if (!p.strip_i.within(nx) || p.m_plane < 0 || p.m_plane >= ny || !p.substrate_k.within(nz))
        throw ConfigError(o + ": port probe '" + p.name + "' out of bounds");
    }
    if (p.name.empty()) throw ConfigError(o + ": probe without a name");
  }
  for (const auto& s : sources) {
    if (s.kind == SourceSpec::Kind::kModalInitial) {
      if (dim != 2) throw ConfigError(o + ": modal initial conditions are 2-D only");
      if (s.mode_m < 1 || s.mode_n < 1) throw ConfigError(o + ": modal indices must be >= 1");
    } else {
      if (!(s.half_width > 0)) throw ConfigError(o + ": gaussian half-width must be positive");
      if (!s.cells.within(nx, ny, nz)) throw ConfigError(o + ": gaussian source cells out of bounds");
    }
  }
  for (const auto& patch : pec_patches) {
    if (dim != 3) throw ConfigError(o + ": pec patches are 3-D only");
    if (patch.plane_k < 0 || patch.plane_k > nz || !patch.i.within(nx) || !patch.m.within(ny + 1))
      throw ConfigError(o + ": pec patch out of bounds");
  }
  if (dim == 2)
    for (const auto& par : perturbations.parameters)
      if (par.kind == PerturbationKind::kGeometricLength) {
        if (par.axis == Axis::kX && par.target.m.count() != ny)
          throw ConfigError(o + ": 2-D x-axis stretch bands must span the full y range");
        if (par.axis == Axis::kY && par.target.i.count() != nx)
          throw ConfigError(o + ": 2-D y-axis stretch bands must span the full x range");
      }
  perturbations.validate_against(nx, ny, nz, dim);
  for (const auto& d : derivatives)
    (void)perturbations.derivative_index(d.terms, geometric_band_lengths());
  (void)resolve_dt();
}

SimulationConfig parse_config(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ":" + std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
  }

  SimulationConfig cfg;
  cfg.config_hash = fnv1a_hex(text);
  try {
    cfg.name = j.value("name", origin);
    cfg.dim = j.value("dim", 2);

    const json& mesh = j.at("mesh");
    const json& cells = mesh.at("cells");
    cfg.nx = cells.at(0).get<int>();
    cfg.ny = cells.at(1).get<int>();
    cfg.nz = cells.size() > 2 ? cells.at(2).get<int>() : 1;
    const json& sizes = mesh.at("cell_size_m");
    cfg.dx = sizes.at(0).get<double>();
    cfg.dy = sizes.at(1).get<double>();
    cfg.dz = sizes.size() > 2 ? sizes.at(2).get<double>() : cfg.dx;

    const json& time = j.at("time");
    cfg.steps = time.at("steps").get<int>();
    const json& dt = time.at("dt");  // no silent default: the policy is explicit
    const std::string policy = dt.at("policy").get<std::string>();
    if (policy == "cfl_factor") {
      cfg.dt_policy = {DtPolicy::Kind::kCflFactor, require_number(dt, origin, "value")};
    } else if (policy == "fixed") {
      cfg.dt_policy = {DtPolicy::Kind::kFixed, require_number(dt, origin, "seconds")};
    } else {
      fail(origin, "time.dt.policy must be cfl_factor|fixed");
    }

    if (j.contains("materials")) {
      const json& mat = j.at("materials");
      cfg.materials.background_eps_r = mat.value("background_eps_r", 1.0);
      for (const auto& r : mat.value("regions", json::array())) {
        MaterialRegion region;
        region.eps_r = require_number(r, origin, "eps_r");
        region.cells = parse_box(r.at("cells"), origin, "materials.regions.cells");
        cfg.materials.regions.push_back(region);
      }
    }

    if (j.contains("boundaries")) {
      const json& b = j.at("boundaries");
      auto get = [&](const char* key, BoundaryKind dflt) {
        return b.contains(key) ? parse_boundary(b.at(key), origin, key) : dflt;
      };
      cfg.boundaries.x_lo = get("x_lo", BoundaryKind::kPec);
      cfg.boundaries.x_hi = get("x_hi", BoundaryKind::kPec);
      cfg.boundaries.y_lo = get("y_lo", BoundaryKind::kPec);
      cfg.boundaries.y_hi = get("y_hi", BoundaryKind::kPec);
      cfg.boundaries.z_lo = get("z_lo", BoundaryKind::kPec);
      cfg.boundaries.z_hi = get("z_hi", BoundaryKind::kPec);
    }

    for (const auto& s : j.value("sources", json::array())) {
      SourceSpec src;
      const std::string type = s.at("type").get<std::string>();
      if (type == "modal_initial") {
        src.kind = SourceSpec::Kind::kModalInitial;
        src.mode_m = s.at("mode").at(0).get<int>();
        src.mode_n = s.at("mode").at(1).get<int>();
        src.amplitude = s.value("amplitude", 1.0);
        const std::string h_init = s.value("h_init", "analytic");
        if (h_init != "analytic" && h_init != "zero") fail(origin, "sources.h_init must be analytic|zero");
        src.analytic_h_init = h_init == "analytic";
      } else if (type == "gaussian_ez") {
        src.kind = SourceSpec::Kind::kGaussianEz;
        src.half_width = require_number(s, origin, "half_width_s");
        src.delay = require_number(s, origin, "delay_s");
        src.amplitude = s.value("amplitude", 1.0);
        src.cells = parse_box(s.at("cells"), origin, "sources.cells");
      } else {
        fail(origin, "sources.type must be modal_initial|gaussian_ez");
      }
      cfg.sources.push_back(src);
    }

    for (const auto& p : j.value("probes", json::array())) {
      ProbeSpec probe;
      probe.name = p.at("name").get<std::string>();
      const std::string type = p.value("type", "point");
      if (type == "point") {
        probe.kind = ProbeSpec::Kind::kPoint;
        probe.component = p.value("component", "Ez");
        const json& cell = p.at("cell");
        probe.i = cell.at(0).get<int>();
        probe.m = cell.at(1).get<int>();
        probe.k = cell.size() > 2 ? cell.at(2).get<int>() : 0;
      } else if (type == "port_voltage") {
        probe.kind = ProbeSpec::Kind::kPortVoltage;
        probe.strip_i = parse_range(p.at("strip_i"), origin, "probes.strip_i");
        probe.m_plane = p.at("m_plane").get<int>();
        probe.substrate_k = parse_range(p.at("k"), origin, "probes.k");
      } else {
        fail(origin, "probes.type must be point|port_voltage");
      }
      cfg.probes.push_back(probe);
    }

    for (const auto& p : j.value("pec_patches", json::array())) {
      PecPatch patch;
      patch.plane_k = p.at("plane_k").get<int>();
      patch.i = parse_range(p.at("i"), origin, "pec_patches.i");
      patch.m = parse_range(p.at("m"), origin, "pec_patches.m");
      cfg.pec_patches.push_back(patch);
    }

    for (const auto& p : j.value("perturbations", json::array())) {
      ParameterPerturbation par;
      par.name = p.at("name").get<std::string>();
      const std::string kind = p.at("kind").get<std::string>();
      if (kind == "material") {
        par.kind = PerturbationKind::kMaterialEps;
      } else if (kind == "geometric") {
        par.kind = PerturbationKind::kGeometricLength;
        par.axis = parse_axis(p.at("axis"), origin, "perturbations.axis");
        par.compensate = p.value("compensate", true);
      } else {
        fail(origin, "perturbations.kind must be material|geometric");
      }
      par.order = p.value("order", 1);
      par.step = require_number(p, origin, "step");
      par.target = parse_box(p.at("cells"), origin, "perturbations.cells");
      cfg.perturbations.parameters.push_back(par);
    }
    cfg.perturbations.assign_units();

    for (const auto& d : j.value("derivatives", json::array())) {
      DerivativeRequestSpec req;
      for (const auto& [key, val] : d.at("terms").items()) req.terms.push_back({key, val.get<int>()});
      cfg.derivatives.push_back(req);
    }

    if (j.contains("deterministic") && !j.at("deterministic").get<bool>())
      fail(origin, "deterministic=false is not supported; runs are always deterministic");

    cfg.divergence_limit = j.value("divergence_limit", 1e12);
    cfg.study = j.value("study", json::object());
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }

  cfg.validate();
  return cfg;
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace mcfdtd
