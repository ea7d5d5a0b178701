#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dtc/statevec.hpp"

using namespace dtc;
using std::numbers::pi;

namespace {

constexpr Vec3 kX{1, 0, 0};
constexpr Vec3 kY{0, 1, 0};
constexpr Vec3 kZ{0, 0, 1};

SpinState random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<complex_t> a(std::size_t{1} << n);
  double s = 0;
  for (auto& x : a) {
    x = {gauss(rng), gauss(rng)};
    s += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(s);
  return SpinState(n, std::move(a));
}

Vec3 random_axis(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
  const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / len, v[1] / len, v[2] / len};
}

double max_diff(const SpinState& a, const SpinState& b) {
  double m = 0;
  for (std::size_t z = 0; z < a.dim(); ++z) m = std::max(m, std::abs(a[z] - b[z]));
  return m;
}

}  // namespace

TEST_CASE("basis states") {
  auto s = new_basis_state(1, "0");
  CHECK(s[0] == complex_t(1));
  CHECK(s[1] == complex_t(0));

  s = new_basis_state(2, "10");
  CHECK(s[0b01] == complex_t(1));  // site 0 down -> bit 0 set
  CHECK(s.norm() == doctest::Approx(1.0));

  s = new_basis_state(3, "111");
  CHECK(s[7] == complex_t(1));

  CHECK_THROWS_AS(new_basis_state(0, ""), std::out_of_range);
  CHECK_THROWS_AS(new_basis_state(25, std::string(25, '0')), std::out_of_range);
  CHECK_THROWS_AS(new_basis_state(2, "1"), std::invalid_argument);
  CHECK_THROWS_AS(new_basis_state(2, "1x"), std::invalid_argument);
  CHECK_THROWS_AS(SpinState(2, std::vector<complex_t>(3)), std::invalid_argument);
}

TEST_CASE("single-site rotation") {
  SUBCASE("pi about x maps |0> to -i|1>") {
    auto s = new_basis_state(1, "0");
    apply_single_site_rotation(s, 0, kX, pi);
    CHECK(std::abs(s[0]) < 1e-15);
    CHECK(std::abs(s[1] - complex_t(0, -1)) < 1e-15);
  }
  SUBCASE("pi/2 about x") {
    auto s = new_basis_state(1, "0");
    apply_single_site_rotation(s, 0, kX, pi / 2);
    CHECK(std::abs(s[0] - complex_t(1 / std::sqrt(2.0), 0)) < 1e-15);
    CHECK(std::abs(s[1] - complex_t(0, -1 / std::sqrt(2.0))) < 1e-15);
  }
  SUBCASE("zero angle is the identity") {
    std::mt19937_64 rng(7);
    auto s = random_state(4, rng);
    const auto before = s;
    apply_single_site_rotation(s, 2, random_axis(rng), 0.0);
    CHECK(max_diff(s, before) == 0.0);
  }
  SUBCASE("z rotation phases") {
    auto s = new_basis_state(1, "1");
    apply_single_site_rotation(s, 0, kZ, pi / 3);
    CHECK(std::abs(s[1] - std::polar(1.0, pi / 6)) < 1e-15);
  }
  SUBCASE("errors") {
    auto s = new_basis_state(2, "00");
    CHECK_THROWS_AS(apply_single_site_rotation(s, 2, kX, 1.0), std::out_of_range);
    CHECK_THROWS_AS(apply_single_site_rotation(s, -1, kX, 1.0), std::out_of_range);
    CHECK_THROWS_AS(apply_single_site_rotation(s, 0, Vec3{1, 1, 0}, 1.0), std::invalid_argument);
  }
}

TEST_CASE("diagonal phase") {
  SUBCASE("zero phases leave the state unchanged") {
    std::mt19937_64 rng(3);
    auto s = random_state(3, rng);
    const auto before = s;
    apply_diagonal_phase(s, std::vector<double>(8, 0.0));
    CHECK(max_diff(s, before) == 0.0);
  }
  SUBCASE("two-site Ising factors") {
    const double J = 0.7, t2 = 1.3;
    std::vector<double> phases(4);
    for (std::uint64_t z = 0; z < 4; ++z) phases[z] = t2 * J * spin_z(z, 0) * spin_z(z, 1);
    SpinState s(2, std::vector<complex_t>(4, 0.5));
    apply_diagonal_phase(s, phases);
    CHECK(std::abs(s[0b00] - 0.5 * std::polar(1.0, J * t2)) < 1e-15);
    CHECK(std::abs(s[0b10] - 0.5 * std::polar(1.0, -J * t2)) < 1e-15);
  }
  SUBCASE("norm of a uniform superposition") {
    SpinState s(10, std::vector<complex_t>(1024, 1.0 / 32.0));
    std::vector<double> phases(1024);
    for (std::size_t z = 0; z < phases.size(); ++z) phases[z] = 0.37 * double(z);
    apply_diagonal_phase(s, phases);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
  }
  SUBCASE("dimension mismatch") {
    SpinState s(2);
    CHECK_THROWS_AS(apply_diagonal_phase(s, std::vector<double>(3)), std::invalid_argument);
  }
}

TEST_CASE("sigma^z expectation") {
  CHECK(expectation_sigma_z(new_basis_state(1, "0"), 0) == 1.0);
  CHECK(expectation_sigma_z(new_basis_state(1, "1"), 0) == -1.0);
  const double r = 1 / std::sqrt(2.0);
  CHECK(std::abs(expectation_sigma_z(SpinState(1, {r, r}), 0)) < 1e-15);
  CHECK(std::abs(expectation_sigma_z(SpinState(2, {r, 0, 0, r}), 0)) < 1e-15);
  CHECK(expectation_sigma_z(new_basis_state(3, "010"), 1) == -1.0);
  CHECK_THROWS_AS(expectation_sigma_z(SpinState(2), 2), std::out_of_range);
}

TEST_CASE("inner product") {
  CHECK(inner_product(new_basis_state(1, "0"), new_basis_state(1, "0")) == complex_t(1));
  CHECK(inner_product(new_basis_state(1, "0"), new_basis_state(1, "1")) == complex_t(0));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_state(5, rng);
    const auto b = random_state(5, rng);
    CHECK(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))) < 1e-14);
    const auto aa = inner_product(a, a);
    CHECK(std::abs(aa.imag()) < 1e-15);
    CHECK(std::abs(aa.real() - a.norm() * a.norm()) < 1e-14);
  }
  CHECK_THROWS_AS(inner_product(SpinState(2), SpinState(3)), std::invalid_argument);
}

TEST_CASE("rotation locality") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_state(6, rng);
    std::vector<double> before(6);
    for (int i = 0; i < 6; ++i) before[i] = expectation_sigma_z(s, i);
    const int site = static_cast<int>(rng() % 6);
    apply_single_site_rotation(s, site, random_axis(rng), 2 * pi * (rng() % 1000) / 1000.0);
    for (int i = 0; i < 6; ++i) {
      if (i != site) CHECK(std::abs(expectation_sigma_z(s, i) - before[i]) < 1e-12);
    }
  }
}

TEST_CASE("rotation composition about a common axis") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> angle(-2 * pi, 2 * pi);
  for (int trial = 0; trial < 20; ++trial) {
    const auto start = random_state(5, rng);
    const auto axis = random_axis(rng);
    const int site = static_cast<int>(rng() % 5);
    const double a = angle(rng), b = angle(rng);
    auto two = start;
    apply_single_site_rotation(two, site, axis, a);
    apply_single_site_rotation(two, site, axis, b);
    auto one = start;
    apply_single_site_rotation(one, site, axis, a + b);
    CHECK(max_diff(one, two) < 1e-12);
  }
}

TEST_CASE("diagonal layers commute") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-10, 10);
  const auto start = random_state(6, rng);
  std::vector<double> p1(64), p2(64);
  for (auto& x : p1) x = u(rng);
  for (auto& x : p2) x = u(rng);
  auto a = start;
  apply_diagonal_phase(a, p1);
  apply_diagonal_phase(a, p2);
  auto b = start;
  apply_diagonal_phase(b, p2);
  apply_diagonal_phase(b, p1);
  CHECK(max_diff(a, b) < 1e-12);
}

TEST_CASE("norm preservation over 1e5 layers at n = 14") {
  std::mt19937_64 rng(17);
  const int n = 14;
  auto s = new_basis_state(n, std::string("01010101010101"));
  std::vector<double> phases(std::size_t{1} << n);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (auto& x : phases) x = u(rng);
  std::vector<std::array<complex_t, 4>> rotations;
  for (int k = 0; k < 16; ++k) rotations.push_back(rotation_matrix(random_axis(rng), u(rng)));
  for (int layer = 0; layer < 100000; ++layer) {
    if (layer % (n + 1) == n) {
      apply_diagonal_phase(s, phases);
    } else {
      apply_site_matrix(s, layer % (n + 1), rotations[layer % rotations.size()]);
    }
  }
  CHECK(std::abs(s.norm() - 1.0) < 1e-9);
}
