#include "mcfdtd/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace mcfdtd {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

Spectrum dft(const ProbeSeries& series, const std::vector<double>& times, const std::vector<double>& freqs) {
  if (series.samples() < 2) throw Error("dft needs at least two samples");
  if (int(times.size()) != series.samples()) throw Error("dft: times/series length mismatch");
  const double dt = times[1] - times[0];
  const unsigned nc = series.ncoeff;
  const int order = [&] {
    int n = 0;
    while ((1u << n) < nc) ++n;
    return n;
  }();

  Spectrum out;
  out.freqs = freqs;
  out.values.reserve(freqs.size());
  std::vector<double> racc(nc), iacc(nc);
  for (double f : freqs) {
    std::fill(racc.begin(), racc.end(), 0.0);
    std::fill(iacc.begin(), iacc.end(), 0.0);
    const double w = kTwoPi * f;
    for (int n = 0; n < series.samples(); ++n) {
      const double c = std::cos(w * times[n]) * dt;
      const double s = std::sin(w * times[n]) * dt;
      const double* x = series.data.data() + std::size_t(n) * nc;
      for (unsigned q = 0; q < nc; ++q) {
        racc[q] += x[q] * c;
        iacc[q] -= x[q] * s;
      }
    }
    out.values.push_back({DynMc(order, racc), DynMc(order, iacc)});
  }
  return out;
}

std::vector<double> frequency_grid(double f0, double f1, double df) {
  if (!(df > 0) || f1 < f0) throw Error("bad frequency grid");
  std::vector<double> freqs;
  for (double f = f0; f <= f1 + 0.5 * df; f += df) freqs.push_back(f);
  return freqs;
}

ProbeSeries detrend_tail_mean(const ProbeSeries& series, double tail_fraction) {
  const int samples = series.samples();
  const int tail = std::max(1, int(samples * tail_fraction));
  ProbeSeries out = series;
  for (unsigned q = 0; q < series.ncoeff; ++q) {
    double mean = 0;
    for (int n = samples - tail; n < samples; ++n) mean += series.coeff(n, q);
    mean /= tail;
    for (int n = 0; n < samples; ++n) out.data[std::size_t(n) * series.ncoeff + q] -= mean;
  }
  return out;
}

SParams extract_sparams(const RunOutput& incident, const std::string& incident_port, const RunOutput& total,
                        const std::string& port1, const std::string& port2,
                        const std::vector<double>& freqs, double floor_rel) {
  const Spectrum v1i = dft(detrend_tail_mean(incident.probe(incident_port)), incident.times, freqs);
  const Spectrum v1t = dft(detrend_tail_mean(total.probe(port1)), total.times, freqs);
  const Spectrum v2t = dft(detrend_tail_mean(total.probe(port2)), total.times, freqs);

  double peak = 0;
  std::vector<double> inc_mag(freqs.size());
  for (std::size_t q = 0; q < freqs.size(); ++q) {
    const double rr = v1i.values[q].re.real(), ii = v1i.values[q].im.real();
    inc_mag[q] = std::sqrt(rr * rr + ii * ii);
    peak = std::max(peak, inc_mag[q]);
  }
  if (peak <= 0) throw Error("incident spectrum is identically zero");

  SParams out;
  out.freqs = freqs;
  out.s11.reserve(freqs.size());
  out.s21.reserve(freqs.size());
  out.valid.resize(freqs.size());
  for (std::size_t q = 0; q < freqs.size(); ++q) {
    out.valid[q] = inc_mag[q] >= floor_rel * peak;
    if (!out.valid[q]) {
      out.s11.push_back({DynMc(0.0), DynMc(0.0)});
      out.s21.push_back({DynMc(0.0), DynMc(0.0)});
      continue;
    }
    const SpectralValue& inc = v1i.values[q];
    out.s11.push_back((v1t.values[q] - inc) / inc);
    out.s21.push_back(v2t.values[q] / inc);
  }
  return out;
}

const SpectralValue& checked(const SParams& s, const std::vector<SpectralValue>& which, std::size_t idx) {
  if (!s.valid.at(idx))
    throw Error("S-parameter requested at " + std::to_string(s.freqs[idx]) +
                " Hz, below the incident dynamic-range floor");
  return which[idx];
}

}  // namespace mcfdtd
