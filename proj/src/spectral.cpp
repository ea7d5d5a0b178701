#include "dtc/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace dtc {

Eigen::MatrixXcd floquet_operator_dense(const FloquetCycle& cycle) {
  if (cycle.n_sites > kMaxDenseSites) {
    throw std::invalid_argument("dense Floquet operator limited to " +
                                std::to_string(kMaxDenseSites) + " sites, got " +
                                std::to_string(cycle.n_sites));
  }
  const std::size_t dim = std::size_t{1} << cycle.n_sites;
  Eigen::MatrixXcd U(dim, dim);
  for (std::size_t a = 0; a < dim; ++a) {
    SpinState s = new_basis_state(cycle.n_sites, static_cast<std::uint64_t>(a));
    apply_cycle(s, cycle);
    for (std::size_t z = 0; z < dim; ++z) U(z, a) = s[z];
  }
  return U;
}

double fold_quasi_energy(double eigenphase, double period) {
  const double omega = 2.0 * std::numbers::pi / period;
  double e = -eigenphase / period;
  e = std::fmod(e, omega);
  if (e <= -omega / 2) e += omega;
  if (e > omega / 2) e -= omega;
  return e;
}

double pair_gap_defect(double ea, double eb, double omega) {
  double d = std::fmod(ea - eb, omega);
  if (d < 0) d += omega;
  if (d >= omega) d -= omega;
  return std::min(std::abs(d - omega / 2), omega / 2);
}

SpectrumReport quasi_energies(const Eigen::MatrixXcd& U, double period) {
  if (U.rows() != U.cols() || U.rows() == 0) {
    throw std::invalid_argument("Floquet operator must be a nonempty square matrix");
  }
  if (!(period > 0.0)) throw std::invalid_argument("period must be > 0");
  const Eigen::Index dim = U.rows();
  const double unitarity =
      (U.adjoint() * U - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (!(unitarity < 1e-8)) {
    throw std::invalid_argument("matrix is not unitary (max |U^dag U - I| = " +
                                std::to_string(unitarity) + ")");
  }

  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(U, true);
  if (schur.info() != Eigen::Success) {
    throw std::runtime_error("complex Schur decomposition did not converge");
  }
  const auto& T = schur.matrixT();
  const auto& Q = schur.matrixU();

  SpectrumReport r;
  const auto udim = static_cast<std::size_t>(dim);
  r.n_sites = std::has_single_bit(udim) ? std::countr_zero(udim) : 0;
  r.period = period;
  r.omega = 2.0 * std::numbers::pi / period;

  std::vector<double> eps(dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    eps[a] = fold_quasi_energy(std::arg(T(a, a)), period);
  }
  std::vector<Eigen::Index> order(dim);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](auto x, auto y) { return eps[x] < eps[y]; });

  r.quasi_energies.resize(dim);
  r.eigenvalues.resize(dim);
  r.eigenvectors.resize(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    r.quasi_energies[a] = eps[order[a]];
    r.eigenvalues[a] = T(order[a], order[a]);
    r.eigenvectors.col(a) = Q.col(order[a]);
  }

  r.degenerate.assign(dim, false);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = a + 1; b < dim; ++b) {
      if (std::abs(r.eigenvalues[a] - r.eigenvalues[b]) < 1e-12) {
        r.degenerate[a] = true;
        r.degenerate[b] = true;
      }
    }
  }
  return r;
}

Pairing pairing_defect(const SpectrumReport& report) {
  const Eigen::Index dim = report.eigenvectors.cols();
  if (dim == 0 || report.n_sites == 0) {
    throw std::invalid_argument("pairing needs eigenvectors over 2^n states");
  }
  const std::size_t mask = (std::size_t{1} << report.n_sites) - 1;
  const auto& Q = report.eigenvectors;

  // Rows of Q permuted by the global flip: (Xbar Q)[z, a] = Q[z ^ mask, a].
  Eigen::MatrixXcd flipped(dim, dim);
  for (Eigen::Index z = 0; z < dim; ++z) {
    flipped.row(z) = Q.row(static_cast<Eigen::Index>(static_cast<std::size_t>(z) ^ mask));
  }
  const Eigen::MatrixXd overlap = (Q.adjoint() * flipped).cwiseAbs();

  Pairing p;
  p.partner_index.assign(dim, -1);
  p.defect.assign(dim, report.omega / 2);
  if (dim == 1) return p;
  for (Eigen::Index a = 0; a < dim; ++a) {
    Eigen::Index best = -1;
    for (Eigen::Index b = 0; b < dim; ++b) {
      if (b == a) continue;
      if (best < 0 || overlap(b, a) > overlap(best, a)) best = b;
    }
    p.partner_index[a] = static_cast<int>(best);
    p.defect[a] = pair_gap_defect(report.quasi_energies[a],
                                  report.quasi_energies[best], report.omega);
  }
  return p;
}

CatMetrics cat_metrics(std::span<const complex_t> vec, int n_sites) {
  check_site_count(n_sites);
  if (vec.size() != (std::size_t{1} << n_sites)) {
    throw std::invalid_argument("vector length does not match 2^n_sites");
  }
  double norm2 = 0.0;
  for (const auto& a : vec) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > 1e-8) {
    throw std::invalid_argument("cat_metrics needs a normalized vector");
  }

  const int last = n_sites - 1;
  double m1 = 0.0;
  double m2 = 0.0;
  double first_z = 0.0;
  double last_z = 0.0;
  double edge = 0.0;
  for (std::size_t z = 0; z < vec.size(); ++z) {
    const double p = std::norm(vec[z]);
    if (p == 0.0) continue;
    const int down = std::popcount(z);
    const double M = n_sites - 2.0 * down;
    const int z0 = spin_z(z, 0);
    const int zl = spin_z(z, last);
    m1 += p * M;
    m2 += p * M * M;
    first_z += p * z0;
    last_z += p * zl;
    edge += p * z0 * zl;
  }
  const double n = n_sites;
  CatMetrics c;
  c.mean_total_mz = m1 / n;
  c.mz_variance = (m2 - m1 * m1) / (n * n);
  c.edge_connected_correlator = edge - first_z * last_z;
  return c;
}

void fill_pairing(SpectrumReport& report) {
  auto p = pairing_defect(report);
  report.partner_index = std::move(p.partner_index);
  report.pairing_defect = std::move(p.defect);
}

void fill_cat_metrics(SpectrumReport& report) {
  const Eigen::Index dim = report.eigenvectors.cols();
  report.cat.resize(dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    const auto col = report.eigenvectors.col(a);
    report.cat[a] = cat_metrics(std::span<const complex_t>(col.data(), col.size()),
                                report.n_sites);
  }
}

SpectrumReport analyze_spectrum(const FloquetCycle& cycle) {
  auto report = quasi_energies(floquet_operator_dense(cycle), cycle.period);
  fill_pairing(report);
  fill_cat_metrics(report);
  return report;
}

}  // namespace dtc
