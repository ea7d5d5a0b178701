#include "dtc/commands.hpp"

#include <sstream>

#include "dtc/io.hpp"

namespace dtc {

namespace {

std::string metrics_line(const SubharmonicMetrics& m) {
  return "subharmonic: peak_height_at_half = " + csv_real(m.peak_height_at_half) +
         ", peak_location = " + csv_real(m.peak_location) +
         ", is_split = " + (m.is_split ? "1" : "0");
}

std::string ensemble_line(const EnsembleResult& e) {
  return "aggregates: mean_peak = " + csv_real(e.mean_peak) + ", var_peak = " +
         csv_real(e.var_peak) + ", fraction_locked = " + csv_real(e.fraction_locked);
}

}  // namespace

std::vector<std::filesystem::path> execute(const RunConfig& config, unsigned threads) {
  validate_config(config);
  const std::filesystem::path dir = config.output;
  const RunOptions options = run_options(config, threads);
  std::vector<std::filesystem::path> written;

  switch (config.command) {
    case Command::Evolve:
    case Command::Spectrum: {
      const FloquetCycle cycle = build_cycle(config.model);
      SpinState state = make_initial_state(options.initial, config.model.n_sites);
      const TimeSeries series = evolve_periods(state, cycle, options.K);
      const PowerSpectrum agg = aggregate_spectrum(series, options.aggregate, options.window);
      std::vector<std::string> extra;
      if (options.K % 2 == 0) extra.push_back(metrics_line(subharmonic_metrics(agg)));
      const std::string header = make_header(config, extra);
      if (config.command == Command::Evolve) {
        written.push_back(write_file(dir, "timeseries.csv", header, render_timeseries(series)));
      }
      written.push_back(
          write_file(dir, "spectrum.csv", header, render_spectrum(series, agg, options.window)));
      if (config.command == Command::Spectrum) {
        const SpectrumReport report = analyze_spectrum(cycle);
        written.push_back(write_file(dir, "eigenstates.csv", make_header(config),
                                     render_eigenstates(report)));
      }
      break;
    }
    case Command::Ensemble: {
      const auto e = run_ensemble(config.model, config.run.n_realizations, options);
      written.push_back(write_file(dir, "ensemble.csv", make_header(config, {ensemble_line(e)}),
                                   render_ensemble(e)));
      break;
    }
    case Command::Scan: {
      const auto s =
          rigidity_scan(config.model, config.run.epsilon_grid, config.run.n_realizations, options);
      std::vector<std::string> extra;
      extra.push_back("boundary: epsilon_star = " +
                      (s.boundary ? csv_real(*s.boundary) : std::string("out-of-range")) +
                      ", epsilon_max_variance = " + csv_real(s.epsilon_max_variance));
      written.push_back(write_file(dir, "scan.csv", make_header(config, extra), render_scan(s)));
      std::ostringstream rows;
      rows << "epsilon,realization,peak_height,peak_location,is_split\n";
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        for (const auto& r : s.points[i].rows) {
          rows << csv_real(s.epsilon_grid[i]) << ',' << r.realization << ','
               << csv_real(r.peak_height) << ',' << csv_real(r.peak_location) << ','
               << (r.is_split ? 1 : 0) << '\n';
        }
      }
      written.push_back(
          write_file(dir, "scan_realizations.csv", make_header(config, extra), rows.str()));
      break;
    }
    case Command::Compare: {
      const auto c = interaction_comparison(config.model, 1.0 - config.model.g,
                                            config.run.n_realizations, options);
      const std::string header =
          make_header(config, {"comparison: epsilon = " + csv_real(c.epsilon) +
                                   ", peak_ratio = " + csv_real(c.peak_ratio)});
      written.push_back(write_file(dir, "compare.csv", header, render_comparison(c)));
      written.push_back(write_file(dir, "ensemble_interacting.csv", header,
                                   render_ensemble(c.interacting)));
      written.push_back(write_file(dir, "ensemble_noninteracting.csv", header,
                                   render_ensemble(c.noninteracting)));
      break;
    }
  }
  return written;
}

}  // namespace dtc
