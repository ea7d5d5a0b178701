#include "dtc/statevec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dtc {

namespace {

// Plain complex product; std::complex operator* goes through the C99 Annex G
// NaN/inf recovery path, which dominates the kernel runtime.
inline complex_t cmul(complex_t a, complex_t b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

void check_site_count(int n_sites) {
  if (n_sites < 1 || n_sites > kMaxSites) {
    throw std::out_of_range("n_sites must be in [1, " +
                            std::to_string(kMaxSites) + "], got " +
                            std::to_string(n_sites));
  }
}

SpinState::SpinState(int n_sites) : n_sites_(n_sites) {
  check_site_count(n_sites);
  amps_.assign(std::size_t{1} << n_sites, complex_t{0.0, 0.0});
  amps_[0] = 1.0;
}

SpinState::SpinState(int n_sites, std::vector<complex_t> amplitudes)
    : n_sites_(n_sites), amps_(std::move(amplitudes)) {
  check_site_count(n_sites);
  if (amps_.size() != (std::size_t{1} << n_sites)) {
    throw std::invalid_argument("amplitude array length " +
                                std::to_string(amps_.size()) +
                                " does not match 2^" + std::to_string(n_sites));
  }
}

double SpinState::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

std::uint64_t basis_index(std::string_view bits) {
  std::uint64_t z = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      z |= std::uint64_t{1} << i;
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bitstring may only contain '0' and '1': " +
                                  std::string(bits));
    }
  }
  return z;
}

SpinState new_basis_state(int n_sites, std::string_view bits) {
  check_site_count(n_sites);
  if (bits.size() != static_cast<std::size_t>(n_sites)) {
    throw std::invalid_argument("bitstring length " +
                                std::to_string(bits.size()) +
                                " does not match n_sites " +
                                std::to_string(n_sites));
  }
  return new_basis_state(n_sites, basis_index(bits));
}

SpinState new_basis_state(int n_sites, std::uint64_t index) {
  SpinState s(n_sites);
  if (index >= s.dim()) throw std::out_of_range("basis index out of range");
  s[0] = 0.0;
  s[index] = 1.0;
  return s;
}

std::array<complex_t, 4> rotation_matrix(const Vec3& axis, double angle) {
  const double len2 = axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2];
  if (std::abs(std::sqrt(len2) - 1.0) > 1e-12) {
    throw std::invalid_argument("rotation axis must have unit norm");
  }
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  const auto [nx, ny, nz] = axis;
  // c*I - i s (nx X + ny Y + nz Z)
  return {complex_t{c, -s * nz}, complex_t{-s * ny, -s * nx},
          complex_t{s * ny, -s * nx}, complex_t{c, s * nz}};
}

void apply_site_matrix(SpinState& state, int site,
                       const std::array<complex_t, 4>& u) {
  if (site < 0 || site >= state.n_sites()) {
    throw std::out_of_range("site " + std::to_string(site) + " out of range");
  }
  auto amps = state.amplitudes();
  const std::size_t stride = std::size_t{1} << site;
  const std::size_t dim = amps.size();
  // Outer loop walks blocks of 2*stride, inner loop the lower half of each.
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const complex_t a0 = amps[i];
      const complex_t a1 = amps[i + stride];
      amps[i] = cmul(u[0], a0) + cmul(u[1], a1);
      amps[i + stride] = cmul(u[2], a0) + cmul(u[3], a1);
    }
  }
}

void apply_single_site_rotation(SpinState& state, int site, const Vec3& axis,
                                double angle) {
  apply_site_matrix(state, site, rotation_matrix(axis, angle));
}

void apply_diagonal_phase(SpinState& state, std::span<const double> phases) {
  if (phases.size() != state.dim()) {
    throw std::invalid_argument("phase table length " +
                                std::to_string(phases.size()) +
                                " does not match state dimension " +
                                std::to_string(state.dim()));
  }
  auto amps = state.amplitudes();
  for (std::size_t z = 0; z < amps.size(); ++z) {
    if (phases[z] != 0.0) amps[z] = cmul(amps[z], std::polar(1.0, phases[z]));
  }
}

double expectation_sigma_z(const SpinState& state, int site) {
  if (site < 0 || site >= state.n_sites()) {
    throw std::out_of_range("site " + std::to_string(site) + " out of range");
  }
  const auto amps = state.amplitudes();
  double up = 0.0;
  double down = 0.0;
  for (std::size_t z = 0; z < amps.size(); ++z) {
    if ((z >> site) & 1U) {
      down += std::norm(amps[z]);
    } else {
      up += std::norm(amps[z]);
    }
  }
  return up - down;
}

complex_t inner_product(const SpinState& a, const SpinState& b) {
  if (a.n_sites() != b.n_sites()) {
    throw std::invalid_argument("inner_product: site counts differ");
  }
  complex_t acc{0.0, 0.0};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t z = 0; z < x.size(); ++z) acc += cmul(std::conj(x[z]), y[z]);
  return acc;
}

}  // namespace dtc
