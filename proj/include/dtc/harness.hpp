#pragma once

// Disorder ensembles, rigidity scans over the pi-pulse deviation eps = 1 - g,
// and interacting vs noninteracting comparisons.
//
// Realization r of an ensemble is the model with realization_index = r. Rows
// are always stored sorted by realization index and aggregates are recomputed
// from the rows, so results do not depend on how work was scheduled.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtc/evolution.hpp"
#include "dtc/model.hpp"

namespace dtc {

struct InitialStateSpec {
  enum class Kind { Neel, Bits, Random };
  Kind kind = Kind::Neel;
  std::string bits;
  std::uint64_t seed = 0;

  /// "neel", "random:<seed>" or a bitstring of '0'/'1'.
  static InitialStateSpec parse(const std::string& text);
  std::string to_string() const;

  bool operator==(const InitialStateSpec&) const = default;
};

/// Neel is "0101...". Random draws a z-basis bitstring from stream (seed, 0).
std::string initial_bits(const InitialStateSpec& spec, int n_sites);
SpinState make_initial_state(const InitialStateSpec& spec, int n_sites);

struct RunOptions {
  int K = 100;
  InitialStateSpec initial;
  Window window = Window::None;
  Aggregate aggregate = Aggregate::PerSite;
  /// Worker threads; 0 picks the hardware concurrency. Never affects results.
  unsigned threads = 0;
};

struct SingleRun {
  TimeSeries series;
  PowerSpectrum spectrum;
  SubharmonicMetrics metrics;
};

/// Builds the cycle for `params`, evolves K periods and reduces the spectrum.
SingleRun run_single(const ModelParams& params, const RunOptions& options);

struct RealizationRow {
  std::uint64_t realization = 0;
  double peak_height = 0.0;
  double peak_location = 0.0;
  bool is_split = true;

  bool operator==(const RealizationRow&) const = default;
};

struct EnsembleResult {
  ModelParams params;
  std::vector<RealizationRow> rows;
  double mean_peak = 0.0;
  /// Population variance of peak_height over realizations.
  double var_peak = 0.0;
  double fraction_locked = 0.0;

  void recompute_aggregates();
  bool operator==(const EnsembleResult&) const = default;
};

/// Realizations first_index .. first_index + n_realizations - 1.
EnsembleResult run_ensemble(const ModelParams& params, int n_realizations,
                            const RunOptions& options,
                            std::uint64_t first_index = 0);

/// Union of two ensembles of the same model; realization indices must be
/// disjoint.
EnsembleResult merge_ensembles(const EnsembleResult& a, const EnsembleResult& b);

struct ScanResult {
  std::vector<double> epsilon_grid;
  std::vector<EnsembleResult> points;
  /// Where fraction_locked first falls through 0.5, linearly interpolated;
  /// empty when the grid does not bracket a crossing.
  std::optional<double> boundary;
  /// Grid point of maximal peak-height variance.
  double epsilon_max_variance = 0.0;
};

void validate_epsilon_grid(const std::vector<double>& grid);

ScanResult rigidity_scan(const ModelParams& base,
                         const std::vector<double>& epsilon_grid,
                         int n_realizations, const RunOptions& options);

std::optional<double> locking_boundary(const std::vector<double>& grid,
                                       const std::vector<double>& fraction_locked);

struct ComparisonReport {
  double epsilon = 0.0;
  EnsembleResult interacting;
  EnsembleResult noninteracting;
  /// interacting.mean_peak / noninteracting.mean_peak.
  double peak_ratio = 0.0;
};

/// The noninteracting branch has J0 = delta_J = 0; fields are unchanged
/// because they are drawn before the couplings.
ComparisonReport interaction_comparison(const ModelParams& params, double epsilon,
                                        int n_realizations,
                                        const RunOptions& options);

}  // namespace dtc
