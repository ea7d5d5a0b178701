#include "dtc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dtc {

std::string csv_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string make_header(const RunConfig& config, const std::vector<std::string>& extra) {
  std::ostringstream os;
  os << "# dtc " << kVersion << '\n';
  os << "# convention: basis bit b = site b; bit 0 = spin up (sigma^z = +1)\n";
  os << "# convention: rotations exp(-i angle/2 n.sigma); layer order x-rotation, "
        "Ising phase, disorder\n";
  os << "# convention: quasi-energy branch (-Omega/2, Omega/2], Omega = 2 pi / T\n";
  os << "# convention: DFT f(nu) = (1/K) sum_k m(k) exp(-2 pi i nu k), nu = j/K, "
        "power = |f|^2\n";
  os << "# convention: aggregate = "
     << (config.run.aggregate == Aggregate::PerSite ? "per-site (mean of site powers)"
                                                    : "averaged (DFT of site mean)")
     << ", window = " << (config.run.window == Window::None ? "none" : "hann") << '\n';
  std::istringstream cfg(serialize_config(config, false));
  for (std::string line; std::getline(cfg, line);) os << "# config: " << line << '\n';
  for (const auto& e : extra) os << "# " << e << '\n';
  return os.str();
}

std::string render_timeseries(const TimeSeries& series) {
  std::ostringstream os;
  os << "site,period,m\n";
  for (int i = 0; i < series.n_sites; ++i) {
    for (int k = 0; k < series.K; ++k) {
      os << i << ',' << k << ',' << csv_real(series.m[i][k]) << '\n';
    }
  }
  return os.str();
}

std::string render_spectrum(const TimeSeries& series, const PowerSpectrum& aggregated,
                            Window window) {
  std::ostringstream os;
  os << "nu,power,site\n";
  for (int i = 0; i < series.n_sites; ++i) {
    const auto s = dft_power_spectrum(series.m[i], window);
    for (int j = 0; j < s.K; ++j) {
      os << csv_real(s.frequencies[j]) << ',' << csv_real(s.power[j]) << ',' << i << '\n';
    }
  }
  for (int j = 0; j < aggregated.K; ++j) {
    os << csv_real(aggregated.frequencies[j]) << ',' << csv_real(aggregated.power[j])
       << ",avg\n";
  }
  return os.str();
}

std::string render_eigenstates(const SpectrumReport& r) {
  std::ostringstream os;
  os << "index,quasi_energy,partner_index,pairing_defect,mean_total_mz,mz_variance,"
        "edge_correlator,degenerate\n";
  for (std::size_t a = 0; a < r.quasi_energies.size(); ++a) {
    os << a << ',' << csv_real(r.quasi_energies[a]) << ',' << r.partner_index[a] << ','
       << csv_real(r.pairing_defect[a]) << ',' << csv_real(r.cat[a].mean_total_mz) << ','
       << csv_real(r.cat[a].mz_variance) << ',' << csv_real(r.cat[a].edge_connected_correlator)
       << ',' << (r.degenerate[a] ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string render_ensemble(const EnsembleResult& e) {
  std::ostringstream os;
  os << "realization,peak_height,peak_location,is_split\n";
  for (const auto& r : e.rows) {
    os << r.realization << ',' << csv_real(r.peak_height) << ','
       << csv_real(r.peak_location) << ',' << (r.is_split ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string render_scan(const ScanResult& s) {
  std::ostringstream os;
  os << "epsilon,mean_peak,var_peak,fraction_locked\n";
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const auto& p = s.points[i];
    os << csv_real(s.epsilon_grid[i]) << ',' << csv_real(p.mean_peak) << ','
       << csv_real(p.var_peak) << ',' << csv_real(p.fraction_locked) << '\n';
  }
  return os.str();
}

std::string render_comparison(const ComparisonReport& c) {
  std::ostringstream os;
  os << "branch,J0,delta_J,mean_peak,var_peak,fraction_locked\n";
  for (const auto* e : {&c.interacting, &c.noninteracting}) {
    os << (e == &c.interacting ? "interacting" : "noninteracting") << ','
       << csv_real(e->params.coupling.J0) << ',' << csv_real(e->params.coupling.delta_J) << ','
       << csv_real(e->mean_peak) << ',' << csv_real(e->var_peak) << ','
       << csv_real(e->fraction_locked) << '\n';
  }
  return os.str();
}

std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& header, const std::string& body) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << header << body;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
  return path;
}

}  // namespace dtc
