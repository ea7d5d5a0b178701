#pragma once

// CSV result files. Every file starts with '#' header lines carrying the
// artifact version, the resolved configuration and the conventions used;
// reals are written with 17 significant digits and rows in a fixed order.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtc/config.hpp"
#include "dtc/evolution.hpp"
#include "dtc/harness.hpp"
#include "dtc/spectral.hpp"

namespace dtc {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// '#'-prefixed header: version, conventions, config (minus output dir) and
/// any extra "key: value" lines.
std::string make_header(const RunConfig& config,
                        const std::vector<std::string>& extra = {});

/// "%.17g".
std::string csv_real(double x);

std::string render_timeseries(const TimeSeries& series);
/// One block of rows per site, then the aggregated spectrum labelled "avg".
std::string render_spectrum(const TimeSeries& series, const PowerSpectrum& aggregated,
                            Window window);
std::string render_eigenstates(const SpectrumReport& report);
std::string render_ensemble(const EnsembleResult& ensemble);
std::string render_scan(const ScanResult& scan);
std::string render_comparison(const ComparisonReport& report);

/// Writes header + body to dir/name, creating dir if needed.
std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& header, const std::string& body);

}  // namespace dtc
