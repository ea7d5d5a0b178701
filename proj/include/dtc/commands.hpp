#pragma once

#include <filesystem>
#include <vector>

#include "dtc/config.hpp"

namespace dtc {

/// Runs one configured command and writes its result files into
/// config.output. Returns the written paths in a fixed order.
///
///   evolve   -> timeseries.csv, spectrum.csv
///   spectrum -> spectrum.csv, eigenstates.csv
///   ensemble -> ensemble.csv
///   scan     -> scan.csv, scan_realizations.csv
///   compare  -> compare.csv, ensemble_interacting.csv, ensemble_noninteracting.csv
std::vector<std::filesystem::path> execute(const RunConfig& config, unsigned threads = 0);

}  // namespace dtc
