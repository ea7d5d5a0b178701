#include "dtc/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dtc {

std::vector<double> TimeSeries::site_average() const {
  std::vector<double> avg(K, 0.0);
  for (const auto& row : m) {
    for (int k = 0; k < K; ++k) avg[k] += row[k];
  }
  for (auto& v : avg) v /= n_sites;
  return avg;
}

TimeSeries evolve_periods(SpinState& state, const FloquetCycle& cycle, int K) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (state.n_sites() != cycle.n_sites) {
    throw std::invalid_argument("state and cycle site counts differ");
  }
  const int n = state.n_sites();
  TimeSeries ts;
  ts.n_sites = n;
  ts.K = K;
  ts.m.assign(n, std::vector<double>(K, 0.0));

  std::vector<double> up(n);
  std::vector<double> down(n);
  for (int k = 0; k < K; ++k) {
    if (k > 0) apply_cycle(state, cycle);
    // One sweep over the amplitudes collects every site's magnetization.
    std::fill(up.begin(), up.end(), 0.0);
    std::fill(down.begin(), down.end(), 0.0);
    const auto amps = state.amplitudes();
    for (std::size_t z = 0; z < amps.size(); ++z) {
      const double p = std::norm(amps[z]);
      for (int i = 0; i < n; ++i) {
        ((z >> i) & 1U ? down[i] : up[i]) += p;
      }
    }
    for (int i = 0; i < n; ++i) ts.m[i][k] = up[i] - down[i];
  }
  return ts;
}

PowerSpectrum dft_power_spectrum(std::span<const double> series, Window window) {
  const int K = static_cast<int>(series.size());
  if (K < 2) throw std::invalid_argument("DFT needs at least 2 samples");

  std::vector<double> x(series.begin(), series.end());
  if (window == Window::Hann) {
    for (int k = 0; k < K; ++k) {
      x[k] *= 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * k / K));
    }
  }

  // Twiddles indexed by (j*k) mod K keep every angle in [0, 2 pi).
  std::vector<double> cs(K);
  std::vector<double> sn(K);
  for (int r = 0; r < K; ++r) {
    const double a = 2.0 * std::numbers::pi * r / K;
    cs[r] = std::cos(a);
    sn[r] = std::sin(a);
  }

  PowerSpectrum out;
  out.K = K;
  out.frequencies.resize(K);
  out.power.resize(K);
  for (int j = 0; j < K; ++j) {
    double re = 0.0;
    double im = 0.0;
    long long r = 0;
    for (int k = 0; k < K; ++k) {
      re += x[k] * cs[r];
      im -= x[k] * sn[r];
      r += j;
      if (r >= K) r -= K;
    }
    re /= K;
    im /= K;
    out.frequencies[j] = static_cast<double>(j) / K;
    out.power[j] = re * re + im * im;
  }
  return out;
}

PowerSpectrum aggregate_spectrum(const TimeSeries& series, Aggregate aggregate,
                                 Window window) {
  if (aggregate == Aggregate::Averaged) {
    return dft_power_spectrum(series.site_average(), window);
  }
  PowerSpectrum acc;
  for (int i = 0; i < series.n_sites; ++i) {
    auto s = dft_power_spectrum(series.m[i], window);
    if (i == 0) {
      acc = std::move(s);
    } else {
      for (int j = 0; j < acc.K; ++j) acc.power[j] += s.power[j];
    }
  }
  for (auto& p : acc.power) p /= series.n_sites;
  return acc;
}

SubharmonicMetrics subharmonic_metrics(const PowerSpectrum& spectrum) {
  const int K = spectrum.K;
  if (K < 2 || K % 2 != 0) {
    throw std::invalid_argument("subharmonic metrics need an even K, got " +
                                std::to_string(K));
  }
  const int half = K / 2;
  int best = 1;
  for (int j = 2; j <= half; ++j) {
    if (spectrum.power[j] > spectrum.power[best]) best = j;
  }
  SubharmonicMetrics m;
  m.peak_height_at_half = spectrum.power[half];
  m.peak_location = spectrum.frequencies[best];
  m.is_split = best != half;
  return m;
}

}  // namespace dtc
