#include "mcfdtd/extraction.hpp"

#include <algorithm>
#include <cmath>

namespace mcfdtd {

DerivativeRecord extract(const RunOutput& out, const SimulationConfig& cfg, const std::string& probe,
                         const std::vector<DerivativeTerm>& terms, bool absolute_lengths) {
  const auto idx = cfg.perturbations.derivative_index(terms, cfg.geometric_band_lengths());
  const auto& series = out.probe(probe);
  if (idx.mask.mask >= out.ncoeff)
    throw Error("derivative request needs order-" + std::to_string(idx.order) + " output, run has order " +
                std::to_string(out.order));

  DerivativeRecord rec;
  rec.probe = probe;
  rec.terms = terms;
  rec.order = idx.order;
  rec.convention = absolute_lengths ? "absolute" : "fractional";
  rec.times = out.times;
  rec.values.resize(series.samples());
  const double divisor = idx.step_divisor * (absolute_lengths ? idx.length_scale : 1.0);
  for (int n = 0; n < series.samples(); ++n) rec.values[n] = series.coeff(n, idx.mask.mask) / divisor;
  return rec;
}

JacobianReport assemble_jacobian(std::span<const ParamRun> runs, const std::vector<std::string>& params,
                                 bool absolute_lengths) {
  JacobianReport report;
  report.params = params;
  for (const auto& p : params) {
    const ParamRun* found = nullptr;
    for (const auto& r : runs)
      if (r.param == p) found = &r;
    if (!found) throw Error("jacobian assembly: no run for parameter '" + p + "'");
    if (report.probes.empty()) {
      for (const auto& ps : found->out->probes) report.probes.push_back(ps.name);
      report.times = found->out->times;
      report.series.resize(report.probes.size());
      for (auto& row : report.series) row.resize(params.size());
    }
    for (std::size_t q = 0; q < report.probes.size(); ++q) {
      const auto rec = extract(*found->out, *found->cfg, report.probes[q], {{p, 1}}, absolute_lengths);
      const std::size_t col = &p - params.data();
      report.series[q][col] = rec.values;
    }
  }
  report.runs_used = int(params.size());
  report.cfd_equivalent_runs = 2 * int(params.size());
  return report;
}

HessianReport assemble_hessian(std::span<const HessianEntryRun> runs, const std::vector<std::string>& params,
                               const std::string& probe, bool absolute_lengths) {
  const int n = int(params.size());
  HessianReport report;
  report.params = params;
  report.probe = probe;
  report.series.assign(n, std::vector<std::vector<double>>(n));
  auto index_of = [&](const std::string& p) {
    auto it = std::find(params.begin(), params.end(), p);
    if (it == params.end()) throw Error("hessian assembly: unknown parameter '" + p + "'");
    return int(it - params.begin());
  };

  int unique_runs = 0;
  for (const auto& run : runs) {
    const int i = index_of(run.param_i), j = index_of(run.param_j);
    std::vector<DerivativeTerm> terms;
    if (i == j)
      terms = {{run.param_i, 2}};
    else
      terms = {{run.param_i, 1}, {run.param_j, 1}};
    const auto rec = extract(*run.out, *run.cfg, probe, terms, absolute_lengths);
    if (report.times.empty()) report.times = rec.times;
    if (report.series[i][j].empty()) {
      report.series[i][j] = rec.values;
      ++unique_runs;
    } else {
      // redundant (transposed) run: record the mixed-partial disagreement
      double num = 0, den = 0;
      for (std::size_t q = 0; q < rec.values.size(); ++q) {
        num = std::max(num, std::fabs(rec.values[q] - report.series[i][j][q]));
        den = std::max(den, std::fabs(report.series[i][j][q]));
      }
      if (den > 0) report.max_symmetry_residual = std::max(report.max_symmetry_residual, num / den);
    }
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (report.series[i][j].empty() && !report.series[j][i].empty())
        report.series[i][j] = report.series[j][i];  // symmetry fill
      if (report.series[i][j].empty())
        throw Error("hessian assembly: no run covers (" + params[i] + ", " + params[j] + ")");
    }

  report.runs_used = unique_runs;
  report.mcsd_full_pairs = n * n;
  report.cfd_equivalent_runs = 4 * n * n;
  return report;
}

}  // namespace mcfdtd
