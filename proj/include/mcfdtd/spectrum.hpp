#pragma once

// Frequency-domain layer. The spectral imaginary unit is ordinary
// complex arithmetic kept separate from the perturbation units: a
// spectral value is a (re, im) pair of multicomplex numbers, so
// derivative extraction commutes with the transform.

#include <string>
#include <vector>

#include "mcfdtd/dynmc.hpp"
#include "mcfdtd/runner.hpp"

namespace mcfdtd {

struct SpectralValue {
  DynMc re, im;

  SpectralValue operator+(const SpectralValue& o) const { return {re + o.re, im + o.im}; }
  SpectralValue operator-(const SpectralValue& o) const { return {re - o.re, im - o.im}; }
  SpectralValue operator*(const SpectralValue& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  SpectralValue operator/(const SpectralValue& o) const {
    const DynMc d = inv(o.re * o.re + o.im * o.im);
    return {(re * o.re + im * o.im) * d, (im * o.re - re * o.im) * d};
  }

  /// |v| = sqrt(re^2 + im^2) carried through the multicomplex algebra, so
  /// its imaginary parts hold derivatives of the magnitude.
  DynMc magnitude() const { return sqrt(re * re + im * im); }

  /// 20 log10 |v|, multicomplex-valued like magnitude().
  DynMc magnitude_db() const { return (20.0 / 2.302585092994046) * log(magnitude()); }
};

struct Spectrum {
  std::vector<double> freqs;
  std::vector<SpectralValue> values;

  const SpectralValue& at(std::size_t idx) const { return values[idx]; }
};

/// Discrete-time Fourier sum scaled by dt: X(f) = sum_n x_n e^{-i 2 pi f t_n} dt.
/// The series' multicomplex coefficients pass through linearly.
Spectrum dft(const ProbeSeries& series, const std::vector<double>& times,
             const std::vector<double>& freqs);

/// Uniformly spaced frequency grid [f0, f1] with the given spacing.
std::vector<double> frequency_grid(double f0, double f1, double df);

struct SParams {
  std::vector<double> freqs;
  std::vector<SpectralValue> s11, s21;
  std::vector<char> valid;  // incident magnitude above the dynamic floor
};

/// Removes the static tail offset of a series (per coefficient): a soft
/// source with nonzero time integral leaves a DC residue that would leak
/// across the band through the finite transform window.
ProbeSeries detrend_tail_mean(const ProbeSeries& series, double tail_fraction = 0.1);

/// S11 = (V1_total - V1_incident)/V1_incident, S21 = V2_total/V1_incident,
/// from the port-voltage probes of a matched-line reference run and the
/// device run. Port series are tail-detrended before the transform.
/// Frequencies whose incident magnitude falls below floor_rel * max are
/// flagged invalid; touching them via checked access throws.
SParams extract_sparams(const RunOutput& incident, const std::string& incident_port, const RunOutput& total,
                        const std::string& port1, const std::string& port2,
                        const std::vector<double>& freqs, double floor_rel = 1e-4);

const SpectralValue& checked(const SParams& s, const std::vector<SpectralValue>& which, std::size_t idx);

}  // namespace mcfdtd
