#pragma once

// Run configuration: a line-oriented `key = value` format.
//
//   # comment
//   command = ensemble
//   [model]            # section header, prefixes the following keys
//   n_sites = 10
//   coupling = nearest_neighbor
//   [run]
//   K = 100
//   epsilon_grid = 0, 0.02, 0.04
//
// Keys may also be written fully qualified (model.n_sites = 10). Unknown keys,
// duplicate keys and out-of-range values are rejected.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dtc/harness.hpp"
#include "dtc/model.hpp"
#include "dtc/spectral.hpp"

namespace dtc {

inline constexpr std::string_view kVersion = "1.0.0";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigSyntaxError : public ConfigError {
 public:
  ConfigSyntaxError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class UnknownKeyError : public ConfigError {
 public:
  UnknownKeyError(int line, const std::string& key);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class RangeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

enum class Command { Evolve, Spectrum, Ensemble, Scan, Compare };

std::string_view command_name(Command c);
Command parse_command(std::string_view name);

struct RunSettings {
  int K = 100;
  int n_realizations = 50;
  InitialStateSpec initial_state;
  std::vector<double> epsilon_grid;
  Window window = Window::None;
  Aggregate aggregate = Aggregate::PerSite;

  bool operator==(const RunSettings&) const = default;
};

struct RunConfig {
  Command command = Command::Evolve;
  ModelParams model;
  RunSettings run;
  std::string output = ".";

  bool operator==(const RunConfig&) const = default;
};

/// Default grid 0, 0.02, ..., 0.30.
std::vector<double> default_epsilon_grid();

/// Parses, applies `overrides` (each "key=value", applied after the file
/// text), resolves defaults and validates. `command` and `model.n_sites`
/// are required.
RunConfig parse_config(std::string_view text,
                       const std::vector<std::string>& overrides = {},
                       const std::string& default_output = ".");

/// Canonical text form; parse_config(serialize_config(c)) == c. Output
/// headers leave out the output directory so results do not depend on it.
std::string serialize_config(const RunConfig& config, bool include_output = true);

/// Range checks for a resolved config; throws RangeError.
void validate_config(const RunConfig& config);

RunOptions run_options(const RunConfig& config, unsigned threads = 0);

/// Shortest round-trip decimal form (up to 17 significant digits).
std::string format_real(double x);

}  // namespace dtc
