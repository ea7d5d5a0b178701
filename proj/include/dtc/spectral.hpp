#pragma once

// Dense Floquet operator, quasi-energy spectrum and the cat-state / pi-pairing
// diagnostics of its eigenvectors. Dense mode is capped at 12 sites.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dtc/model.hpp"

namespace dtc {

inline constexpr int kMaxDenseSites = 12;

/// Column a is apply_cycle applied to basis state a.
Eigen::MatrixXcd floquet_operator_dense(const FloquetCycle& cycle);

struct CatMetrics {
  double mean_total_mz = 0.0;
  double mz_variance = 0.0;
  double edge_connected_correlator = 0.0;
};

struct SpectrumReport {
  int n_sites = 0;
  double period = 0.0;
  double omega = 0.0;
  /// Ascending, in (-omega/2, omega/2].
  std::vector<double> quasi_energies;
  std::vector<complex_t> eigenvalues;
  /// Orthonormal eigenvectors as columns, same order as quasi_energies.
  Eigen::MatrixXcd eigenvectors;
  /// Set when another eigenvalue lies within 1e-12.
  std::vector<bool> degenerate;

  // Filled by analyze_spectrum / fill_pairing / fill_cat_metrics.
  std::vector<int> partner_index;
  std::vector<double> pairing_defect;
  std::vector<CatMetrics> cat;
};

/// Eigen-decomposition via complex Schur form; for a unitary (normal) matrix
/// the Schur vectors are an orthonormal eigenbasis even inside degenerate
/// subspaces. Throws std::invalid_argument if U is not unitary to 1e-8.
SpectrumReport quasi_energies(const Eigen::MatrixXcd& U, double period);

/// Folds -phase/period into (-omega/2, omega/2].
double fold_quasi_energy(double eigenphase, double period);

/// |((ea - eb) mod omega) - omega/2|, in [0, omega/2].
double pair_gap_defect(double ea, double eb, double omega);

struct Pairing {
  std::vector<int> partner_index;
  std::vector<double> defect;
};

/// Partner of a is the b != a maximizing |<u_b| Xbar |u_a>|, Xbar the
/// product of sigma^x over all sites. Ties go to the lowest index.
Pairing pairing_defect(const SpectrumReport& report);

CatMetrics cat_metrics(std::span<const complex_t> vec, int n_sites);

void fill_pairing(SpectrumReport& report);
void fill_cat_metrics(SpectrumReport& report);

/// Dense operator, spectrum, pairing and cat metrics in one call.
SpectrumReport analyze_spectrum(const FloquetCycle& cycle);

}  // namespace dtc
