#pragma once

// Config-driven study runners shared by the command-line tool and the
// acceptance suite: scalar error sweeps, cavity accuracy studies,
// filter S-parameter sensitivity studies, Taylor surrogates, and the
// operation-count benchmark.

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcfdtd/csd.hpp"
#include "mcfdtd/simconfig.hpp"
#include "mcfdtd/taylor.hpp"

namespace mcfdtd {

// ---------------------------------------------------------------- stub --

struct StubStudyConfig {
  double l0 = 0.125;
  double lambda = 1.0;
  std::vector<double> h_first, h_second;

  static StubStudyConfig from_json(const nlohmann::json& study);
};

struct StubStudyResult {
  std::vector<std::pair<SweepMethod, std::vector<ErrorSweepRow>>> first_order;   // vs 4 pi
  std::vector<std::pair<SweepMethod, std::vector<ErrorSweepRow>>> second_order;  // vs 16 pi^2
};

StubStudyResult run_stub_study(const StubStudyConfig& cfg);

// -------------------------------------------------------------- cavity --

struct CavityStudyConfig {
  int mode_m = 1, mode_n = 1;
  double width = 0.15, height = 0.10;
  std::vector<double> h_sweep;
  double cfd_h = 1e-4;
  std::vector<double> mesh_sweep;  // cell sizes (m)
  double mcsd_h = 1e-5;
  int fidelity_orders = 0;  // units per parameter for the real-part check
  double fidelity_step = 1e-5;

  static CavityStudyConfig from_json(const nlohmann::json& study);
};

// center-probe traces of one perturbed run against the oracle
struct CavityTraceResult {
  std::vector<double> times;
  std::vector<double> re_ez, ez_analytic;
  std::vector<double> d2_dadb, d2_dadb_analytic;
};

struct CavityErrorSweepResult {
  std::vector<double> h;
  std::vector<double> mcsd_err;  // guarded linf of d2Ez/dadb vs analytic
  std::vector<double> cfd_err;
};

struct CavityMeshSweepResult {
  std::vector<double> delta;
  std::vector<double> mcsd_err, cfd_err, field_err;
};

struct CavityFidelityResult {
  int total_order = 0;
  double max_rel_diff = 0;  // Re(perturbed) vs order-0 run, amplitude normalized
};

CavityTraceResult run_cavity_trace(const SimulationConfig& cfg, const CavityStudyConfig& study);
CavityErrorSweepResult run_cavity_error_sweep(const SimulationConfig& cfg, const CavityStudyConfig& study);
CavityMeshSweepResult run_cavity_mesh_sweep(const SimulationConfig& cfg, const CavityStudyConfig& study);
CavityFidelityResult run_cavity_fidelity(const SimulationConfig& cfg, const CavityStudyConfig& study);

/// Guarded linf error of the MCSD mixed derivative field (full grid, all
/// steps) against the analytic oracle, at override step h.
double cavity_mixed_linf_mcsd(const SimulationConfig& cfg, const CavityStudyConfig& study, double h);

/// Same norm for the four-run centered-difference estimate at step h.
double cavity_mixed_linf_cfd(const SimulationConfig& cfg, const CavityStudyConfig& study, double h);

/// Least-squares slope of log(err) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& err);

// -------------------------------------------------------------- filter --

struct FilterStudyConfig {
  std::vector<PecPatch> incident_pec_patches;
  std::string incident_port = "port1";
  std::vector<double> h_values;
  double h_reference = 1e-5;
  double f_lo = 0, f_hi = 20e9, df = 1e7;
  double eval_lo = 5e8, eval_hi = 2e10;
  double incident_floor_rel = 1e-4;

  static FilterStudyConfig from_json(const nlohmann::json& study);
};

struct FilterStudyResult {
  std::vector<double> freqs;
  std::vector<char> valid;          // incident floor mask
  std::vector<char> in_eval_band;   // valid and inside the eval band
  std::vector<double> s11_db, s21_db;            // real part of the reference-h run
  std::vector<double> s11_db_plain, s21_db_plain;  // standalone unperturbed run
  double max_nominal_db_gap = 0;  // between the two routes, over the eval band

  // per h value: complex dS21/dw1 and d2S21/dw1 dw2 (absolute lengths)
  std::vector<double> h_values;
  std::vector<std::vector<std::complex<double>>> mcsd_d1, cfd_d1;
  std::vector<std::vector<std::complex<double>>> mcsd_d2, cfd_d2;

  double mcsd_spread_d1 = 0, cfd_spread_d1 = 0;
  double mcsd_spread_d2 = 0, cfd_spread_d2 = 0;
  double max_passivity_excess = 0;  // max over band of |S11|^2 + |S21|^2 - 1
};

FilterStudyResult run_filter_study(const SimulationConfig& cfg, const FilterStudyConfig& study);

// -------------------------------------------------------------- taylor --

struct TaylorStudyConfig {
  std::vector<PecPatch> incident_pec_patches;
  std::string incident_port = "port1";
  double f_lo = 0, f_hi = 20e9, df = 1e7;
  double f_eval = 4.2e9;
  std::vector<double> d_factors;
  double band_abs = 0.02;  // |S21| tolerance band (linear)
  std::vector<int> orders;

  static TaylorStudyConfig from_json(const nlohmann::json& study);
};

struct TaylorStudyResult {
  double f_eval = 0;
  double d0 = 0;  // nominal thickness (m)
  std::vector<double> d_values;
  std::vector<double> fullwave_s21;             // |S21| at f_eval, linear
  std::vector<double> derivatives;              // value + d/dd ... at nominal
  std::vector<TaylorModel1D> models;            // per requested order
  std::vector<double> ranges;                   // effective range per order (m)
  std::vector<std::vector<double>> model_s21;   // model curves over d_values
};

TaylorStudyResult run_taylor_study(const SimulationConfig& cfg, const TaylorStudyConfig& study);

// --------------------------------------------------------------- bench --

struct BenchStudyConfig {
  std::vector<int> orders;
  CellBox eps_cells;
  double step = 1e-5;

  static BenchStudyConfig from_json(const nlohmann::json& study);
};

struct BenchRow {
  int order = 0;
  OpCounts counts;
  double add_ratio = 1, mult_ratio = 1, mult_flat_ratio = 1;
  double claimed_add = 1, claimed_mult = 1;  // 2^N, 3^N
};

struct BenchResult {
  std::vector<BenchRow> rows;
};

BenchResult run_bench_study(const SimulationConfig& cfg, const BenchStudyConfig& study);

}  // namespace mcfdtd
