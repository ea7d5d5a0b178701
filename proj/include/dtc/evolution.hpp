#pragma once

// Stroboscopic evolution and the Fourier diagnostics of subharmonic response.
//
// DFT convention: f(nu_j) = (1/K) sum_k m(k) exp(-2 pi i nu_j k), nu_j = j/K
// in units of the drive frequency 1/T, power_j = |f(nu_j)|^2.

#include <span>
#include <vector>

#include "dtc/model.hpp"
#include "dtc/statevec.hpp"

namespace dtc {

struct TimeSeries {
  int n_sites = 0;
  int K = 0;
  /// m[site][k] = <sigma^z_site(kT)>, k = 0..K-1.
  std::vector<std::vector<double>> m;

  /// (1/n) sum_i m_i(k).
  std::vector<double> site_average() const;
};

/// Records m_i(k) before each of the K cycle applications. `state` is left
/// at time (K-1)T, i.e. after K-1 periods.
TimeSeries evolve_periods(SpinState& state, const FloquetCycle& cycle, int K);

enum class Window { None, Hann };

/// How per-site data are reduced to a single spectrum.
enum class Aggregate {
  /// Power spectrum of each site, then the mean of the powers.
  PerSite,
  /// Power spectrum of the site-averaged magnetization.
  Averaged,
};

struct PowerSpectrum {
  int K = 0;
  std::vector<double> frequencies;
  std::vector<double> power;
};

PowerSpectrum dft_power_spectrum(std::span<const double> series,
                                 Window window = Window::None);

/// Reduces a time series according to `aggregate`.
PowerSpectrum aggregate_spectrum(const TimeSeries& series, Aggregate aggregate,
                                 Window window = Window::None);

struct SubharmonicMetrics {
  double peak_height_at_half = 0.0;
  double peak_location = 0.0;
  bool is_split = true;
};

/// Needs an even K. The peak is searched over bins j = 1..K/2 (nu in (0, 0.5]);
/// on ties the lowest frequency wins.
SubharmonicMetrics subharmonic_metrics(const PowerSpectrum& spectrum);

}  // namespace dtc
