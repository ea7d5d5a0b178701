#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dtc/spectral.hpp"
#include "oracle/dense_oracle.hpp"

using namespace dtc;
using std::numbers::pi;

namespace {

ModelParams solvable_point(int n, std::uint64_t seed) {
  ModelParams p;
  p.n_sites = n;
  p.g = 1.0;
  p.Wx = p.Wy = 0.0;
  p.Wz = 2.7;
  p.coupling = {CouplingKind::NearestNeighbor, 0.8, 0.5, 1.0};
  p.seed = seed;
  return p;
}

Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = {gauss(rng), gauss(rng)};
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST_CASE("floquet_operator_dense") {
  SUBCASE("single pi pulse is -i sigma^x") {
    ModelParams p;
    p.n_sites = 1;
    p.g = 1.0;
    p.coupling.J0 = p.coupling.delta_J = 0.0;
    p.Wx = p.Wy = p.Wz = 0.0;
    const auto U = floquet_operator_dense(build_cycle(p));
    CHECK(std::abs(U(0, 0)) < 1e-15);
    CHECK(std::abs(U(1, 1)) < 1e-15);
    CHECK(std::abs(U(0, 1) - complex_t(0, -1)) < 1e-15);
    CHECK(std::abs(U(1, 0) - complex_t(0, -1)) < 1e-15);
  }
  SUBCASE("identity cycle") {
    ModelParams p;
    p.n_sites = 3;
    p.g = 0.0;
    p.t2 = 0.0;
    p.Wx = p.Wy = p.Wz = 0.0;
    const auto U = floquet_operator_dense(build_cycle(p));
    CHECK((U - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("columns are layered evolutions of basis states") {
    std::mt19937_64 rng(3);
    for (int n = 1; n <= 6; ++n) {
      ModelParams p;
      p.n_sites = n;
      p.g = 0.9;
      p.Wx = 0.3;
      p.Wy = 0.2;
      p.seed = rng();
      const auto c = build_cycle(p);
      const auto U = floquet_operator_dense(c);
      double err = 0;
      for (std::uint64_t a = 0; a < (1ULL << n); ++a) {
        auto s = new_basis_state(n, a);
        apply_cycle(s, c);
        for (std::size_t z = 0; z < s.dim(); ++z) err = std::max(err, std::abs(U(z, a) - s[z]));
      }
      CHECK(err < 1e-12);
      const auto d = sample_disorder(p);
      CHECK((U - oracle::floquet_operator(p, d)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  SUBCASE("unitary for compiled cycles up to n = 10") {
    std::mt19937_64 rng(5);
    for (int n : {2, 5, 8, 10}) {
      ModelParams p;
      p.n_sites = n;
      p.g = 0.93;
      p.coupling = {CouplingKind::PowerLaw, 0.6, 0.0, 1.1};
      p.seed = rng();
      const auto U = floquet_operator_dense(build_cycle(p));
      const auto dim = U.rows();
      CHECK((U.adjoint() * U - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  SUBCASE("dense cap") {
    ModelParams p;
    p.n_sites = 13;
    p.t2 = 0.0;
    CHECK_THROWS_AS(floquet_operator_dense(build_cycle(p)), std::invalid_argument);
  }
}

TEST_CASE("quasi_energies") {
  SUBCASE("identity") {
    const auto r = quasi_energies(Eigen::MatrixXcd::Identity(4, 4), 3.0);
    for (double e : r.quasi_energies) CHECK(std::abs(e) < 1e-15);
    for (bool d : r.degenerate) CHECK(d);
  }
  SUBCASE("-i sigma^x has quasi-energies +-Omega/4") {
    Eigen::MatrixXcd U(2, 2);
    U << 0, complex_t(0, -1), complex_t(0, -1), 0;
    const double T = 2.5;
    const double omega = 2 * pi / T;
    const auto r = quasi_energies(U, T);
    CHECK(r.quasi_energies[0] == doctest::Approx(-omega / 4).epsilon(1e-12));
    CHECK(r.quasi_energies[1] == doctest::Approx(omega / 4).epsilon(1e-12));
  }
  SUBCASE("reconstruction and orthonormality for random unitaries") {
    std::mt19937_64 rng(21);
    for (int dim : {2, 5, 16, 40}) {
      const auto U = random_unitary(dim, rng);
      const double T = 0.5 + (rng() % 100) / 25.0;
      const auto r = quasi_energies(U, T);
      for (int a = 0; a < dim; ++a) {
        CHECK(std::abs(std::polar(1.0, -r.quasi_energies[a] * T) - r.eigenvalues[a]) < 1e-10);
        CHECK(r.quasi_energies[a] > -r.omega / 2);
        CHECK(r.quasi_energies[a] <= r.omega / 2);
        const Eigen::VectorXcd v = r.eigenvectors.col(a);
        CHECK((U * v - r.eigenvalues[a] * v).norm() < 1e-10);
      }
      const auto& Q = r.eigenvectors;
      CHECK((Q.adjoint() * Q - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-8);
      CHECK(std::is_sorted(r.quasi_energies.begin(), r.quasi_energies.end()));
    }
  }
  SUBCASE("branch folding") {
    const double T = 1.0, omega = 2 * pi;
    CHECK(fold_quasi_energy(pi, T) == doctest::Approx(omega / 2));
    CHECK(fold_quasi_energy(-pi, T) == doctest::Approx(omega / 2));
    CHECK(fold_quasi_energy(0.5, T) == doctest::Approx(-0.5));
  }
  SUBCASE("non-unitary input") {
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(3, 3);
    U(0, 0) = 1.01;
    CHECK_THROWS_AS(quasi_energies(U, 1.0), std::invalid_argument);
  }
}

TEST_CASE("pair_gap_defect") {
  const double omega = 2.0;
  CHECK(pair_gap_defect(0.5, -0.5, omega) == doctest::Approx(0.0));
  CHECK(pair_gap_defect(0.3, 0.3, omega) == doctest::Approx(1.0));
  CHECK(pair_gap_defect(-0.5, 0.5, omega) == doctest::Approx(0.0));
  CHECK(pair_gap_defect(0.25, 0.0, omega) == doctest::Approx(0.75));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 200; ++i) {
    const double d = pair_gap_defect(u(rng), u(rng), omega);
    CHECK((d >= 0 && d <= omega / 2));
  }
}

TEST_CASE("pairing defects") {
  SUBCASE("identity has no pi pairing") {
    auto r = quasi_energies(Eigen::MatrixXcd::Identity(8, 8), 2.0);
    fill_pairing(r);
    for (double d : r.pairing_defect) CHECK(d == doctest::Approx(r.omega / 2));
  }
  SUBCASE("solvable point: exact pi pairing matches the 2x2 block oracle") {
    for (int n : {2, 4, 6, 8}) {
      const auto p = solvable_point(n, 100 + n);
      const auto d = sample_disorder(p);
      const auto r = analyze_spectrum(build_cycle(p, d));

      // U|z> = c(z)|zbar>, so each {z, zbar} block has eigenvalues
      // +-sqrt(c(z) c(zbar)).
      const auto phases = ising_phase_table(n, d.bonds, p.t2);
      const std::uint64_t mask = (1ULL << n) - 1;
      auto c = [&](std::uint64_t z) {
        const std::uint64_t zb = z ^ mask;
        double ph = phases[zb];
        for (int i = 0; i < n; ++i) ph += p.t3 * d.fields[i][2] * spin_z(zb, i);
        return std::pow(complex_t(0, -1), n) * std::polar(1.0, ph);
      };
      std::vector<complex_t> expected;
      for (std::uint64_t z = 0; z <= mask; ++z) {
        if (z > (z ^ mask)) continue;
        const complex_t root = std::sqrt(c(z) * c(z ^ mask));
        expected.push_back(root);
        expected.push_back(-root);
      }
      for (const auto& lam : r.eigenvalues) {
        double best = 1e9;
        for (const auto& e : expected) best = std::min(best, std::abs(lam - e));
        CHECK(best < 1e-10);
      }
      for (double defect : r.pairing_defect) CHECK(defect < 1e-10);
    }
  }
  SUBCASE("trivial noninteracting phase") {
    ModelParams p;
    p.n_sites = 6;
    p.g = 0.5;
    p.coupling.J0 = p.coupling.delta_J = 0.0;
    p.Wx = p.Wy = p.Wz = 0.0;
    const auto r = analyze_spectrum(build_cycle(p));
    // Single-spin eigenphases are -+pi/4, so total quasi-energies sit on a
    // grid of Omega/4 with multiplicities binomial(6, k).
    for (double e : r.quasi_energies) {
      const double steps = e / (r.omega / 8);
      CHECK(std::abs(steps - std::round(steps)) < 1e-9);
    }
    CHECK(median(r.pairing_defect) > r.omega / 8);
  }
}

TEST_CASE("cat_metrics") {
  SUBCASE("GHZ") {
    for (int n : {1, 2, 5}) {
      std::vector<complex_t> v(1u << n);
      v.front() = v.back() = 1 / std::sqrt(2.0);
      const auto m = cat_metrics(v, n);
      CHECK(std::abs(m.mean_total_mz) < 1e-15);
      if (n > 1) {
        CHECK(m.mz_variance == doctest::Approx(1.0));
        CHECK(m.edge_connected_correlator == doctest::Approx(1.0));
      }
    }
  }
  SUBCASE("product state") {
    std::vector<complex_t> v(16);
    v[0] = 1;
    const auto m = cat_metrics(v, 4);
    CHECK(m.mean_total_mz == 1.0);
    CHECK(m.mz_variance == 0.0);
    CHECK(m.edge_connected_correlator == 0.0);
  }
  SUBCASE("unnormalized input") {
    std::vector<complex_t> v(4, 1.0);
    CHECK_THROWS_AS(cat_metrics(v, 2), std::invalid_argument);
  }
  SUBCASE("solvable-point eigenstates are cats") {
    const auto r = analyze_spectrum(build_cycle(solvable_point(6, 7)));
    for (const auto& c : r.cat) {
      CHECK(std::abs(c.mean_total_mz) < 1e-10);
      CHECK(std::abs(std::abs(c.edge_connected_correlator) - 1.0) < 1e-10);
    }
  }
  SUBCASE("noninteracting eigenstates are products") {
    ModelParams p;
    p.n_sites = 5;
    p.g = 0.7;
    p.coupling.J0 = p.coupling.delta_J = 0.0;
    p.Wx = 0.9;
    p.Wy = 0.6;
    p.Wz = 1.3;
    p.seed = 3;
    const auto r = analyze_spectrum(build_cycle(p));
    for (std::size_t a = 0; a < r.cat.size(); ++a) {
      REQUIRE_FALSE(r.degenerate[a]);
      CHECK(std::abs(r.cat[a].edge_connected_correlator) < 1e-10);
    }
  }
}

TEST_CASE("eigenvectors evolve by their quasi-energy phase") {
  ModelParams p;
  p.n_sites = 6;
  p.g = 0.9;
  p.Wx = 0.2;
  p.Wy = 0.1;
  p.seed = 17;
  const auto c = build_cycle(p);
  const auto r = analyze_spectrum(c);
  for (Eigen::Index a = 0; a < r.eigenvectors.cols(); ++a) {
    std::vector<complex_t> amps(r.eigenvectors.rows());
    for (Eigen::Index z = 0; z < r.eigenvectors.rows(); ++z) amps[z] = r.eigenvectors(z, a);
    SpinState s(6, amps);
    apply_cycle(s, c);
    const complex_t phase = std::polar(1.0, -r.quasi_energies[a] * r.period);
    double dist = 0;
    for (std::size_t z = 0; z < s.dim(); ++z) dist += std::norm(s[z] - phase * amps[z]);
    CHECK(std::sqrt(dist) < 1e-8);
  }
}
