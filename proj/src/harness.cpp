#include "dtc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "dtc/rng.hpp"

namespace dtc {

InitialStateSpec InitialStateSpec::parse(const std::string& text) {
  InitialStateSpec s;
  if (text == "neel") {
    s.kind = Kind::Neel;
    return s;
  }
  if (text.rfind("random:", 0) == 0) {
    const std::string digits = text.substr(7);
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw std::invalid_argument("random initial state needs a decimal seed: " + text);
    }
    s.kind = Kind::Random;
    s.seed = std::stoull(digits);
    return s;
  }
  if (text.empty() ||
      !std::all_of(text.begin(), text.end(), [](char c) { return c == '0' || c == '1'; })) {
    throw std::invalid_argument("initial state must be 'neel', 'random:<seed>' or a bitstring: " +
                                text);
  }
  s.kind = Kind::Bits;
  s.bits = text;
  return s;
}

std::string InitialStateSpec::to_string() const {
  switch (kind) {
    case Kind::Neel:
      return "neel";
    case Kind::Random:
      return "random:" + std::to_string(seed);
    case Kind::Bits:
      return bits;
  }
  return {};
}

std::string initial_bits(const InitialStateSpec& spec, int n_sites) {
  check_site_count(n_sites);
  std::string bits(n_sites, '0');
  switch (spec.kind) {
    case InitialStateSpec::Kind::Neel:
      for (int i = 1; i < n_sites; i += 2) bits[i] = '1';
      break;
    case InitialStateSpec::Kind::Random: {
      Stream rng(spec.seed, 0);
      const std::uint64_t draw = rng.bits();
      for (int i = 0; i < n_sites; ++i) bits[i] = ((draw >> i) & 1U) ? '1' : '0';
      break;
    }
    case InitialStateSpec::Kind::Bits:
      if (spec.bits.size() != static_cast<std::size_t>(n_sites)) {
        throw std::invalid_argument("initial bitstring length does not match n_sites");
      }
      bits = spec.bits;
      break;
  }
  return bits;
}

SpinState make_initial_state(const InitialStateSpec& spec, int n_sites) {
  return new_basis_state(n_sites, initial_bits(spec, n_sites));
}

namespace {

void check_options(const RunOptions& o) {
  if (o.K < 2 || o.K % 2 != 0) {
    throw std::invalid_argument("K must be even and >= 2, got " + std::to_string(o.K));
  }
}

/// Runs fn(0..count-1) on a pool of worker threads. Each index is handled
/// exactly once; the first exception is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

SingleRun run_single(const ModelParams& params, const RunOptions& options) {
  check_options(options);
  const FloquetCycle cycle = build_cycle(params);
  SpinState state = make_initial_state(options.initial, params.n_sites);
  SingleRun run;
  run.series = evolve_periods(state, cycle, options.K);
  run.spectrum = aggregate_spectrum(run.series, options.aggregate, options.window);
  run.metrics = subharmonic_metrics(run.spectrum);
  return run;
}

void EnsembleResult::recompute_aggregates() {
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.realization < b.realization; });
  const double n = static_cast<double>(rows.size());
  double sum = 0.0;
  double locked = 0.0;
  for (const auto& r : rows) {
    sum += r.peak_height;
    if (!r.is_split) locked += 1.0;
  }
  mean_peak = rows.empty() ? 0.0 : sum / n;
  double ss = 0.0;
  for (const auto& r : rows) ss += (r.peak_height - mean_peak) * (r.peak_height - mean_peak);
  var_peak = rows.empty() ? 0.0 : ss / n;
  fraction_locked = rows.empty() ? 0.0 : locked / n;
}

EnsembleResult run_ensemble(const ModelParams& params, int n_realizations,
                            const RunOptions& options, std::uint64_t first_index) {
  if (n_realizations < 1) throw std::invalid_argument("n_realizations must be >= 1");
  validate(params);
  check_options(options);

  EnsembleResult result;
  result.params = params;
  result.params.realization_index = 0;
  result.rows.resize(n_realizations);
  parallel_for(static_cast<std::size_t>(n_realizations), options.threads,
               [&](std::size_t r) {
                 ModelParams p = params;
                 p.realization_index = first_index + r;
                 const auto run = run_single(p, options);
                 result.rows[r] = {p.realization_index, run.metrics.peak_height_at_half,
                                   run.metrics.peak_location, run.metrics.is_split};
               });
  result.recompute_aggregates();
  return result;
}

EnsembleResult merge_ensembles(const EnsembleResult& a, const EnsembleResult& b) {
  if (!(a.params == b.params)) {
    throw std::invalid_argument("cannot merge ensembles of different models");
  }
  EnsembleResult merged;
  merged.params = a.params;
  merged.rows = a.rows;
  merged.rows.insert(merged.rows.end(), b.rows.begin(), b.rows.end());
  merged.recompute_aggregates();
  for (std::size_t i = 1; i < merged.rows.size(); ++i) {
    if (merged.rows[i].realization == merged.rows[i - 1].realization) {
      throw std::invalid_argument("merged ensembles share realization " +
                                  std::to_string(merged.rows[i].realization));
    }
  }
  return merged;
}

void validate_epsilon_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("epsilon grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] < 1.0)) {
      throw std::invalid_argument("epsilon grid values must lie in [0, 1)");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("epsilon grid must be strictly increasing");
    }
  }
}

std::optional<double> locking_boundary(const std::vector<double>& grid,
                                       const std::vector<double>& fraction_locked) {
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double f0 = fraction_locked[i];
    const double f1 = fraction_locked[i + 1];
    if (f0 >= 0.5 && f1 < 0.5) {
      return grid[i] + (f0 - 0.5) / (f0 - f1) * (grid[i + 1] - grid[i]);
    }
  }
  return std::nullopt;
}

ScanResult rigidity_scan(const ModelParams& base, const std::vector<double>& epsilon_grid,
                         int n_realizations, const RunOptions& options) {
  validate_epsilon_grid(epsilon_grid);
  ScanResult scan;
  scan.epsilon_grid = epsilon_grid;
  std::vector<double> locked;
  double best_var = -1.0;
  for (double eps : epsilon_grid) {
    ModelParams p = base;
    p.g = 1.0 - eps;
    scan.points.push_back(run_ensemble(p, n_realizations, options));
    const auto& e = scan.points.back();
    locked.push_back(e.fraction_locked);
    if (e.var_peak > best_var) {
      best_var = e.var_peak;
      scan.epsilon_max_variance = eps;
    }
  }
  scan.boundary = locking_boundary(epsilon_grid, locked);
  return scan;
}

ComparisonReport interaction_comparison(const ModelParams& params, double epsilon,
                                        int n_realizations, const RunOptions& options) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1)");
  }
  ModelParams on = params;
  on.g = 1.0 - epsilon;
  ModelParams off = on;
  off.coupling.J0 = 0.0;
  off.coupling.delta_J = 0.0;

  ComparisonReport report;
  report.epsilon = epsilon;
  report.interacting = run_ensemble(on, n_realizations, options);
  report.noninteracting = run_ensemble(off, n_realizations, options);
  report.peak_ratio = report.noninteracting.mean_peak > 0.0
                          ? report.interacting.mean_peak / report.noninteracting.mean_peak
                          : std::numeric_limits<double>::infinity();
  return report;
}

}  // namespace dtc
