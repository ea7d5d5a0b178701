#pragma once

// State vector of an N-site spin-1/2 chain and the two kernels every drive is
// built from: single-site SU(2) rotations and diagonal phase layers.
//
// Basis convention: bit b of index z is the state of site b, with bit value 0
// meaning sigma^z = +1 ("up") and 1 meaning sigma^z = -1 ("down").

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace dtc {

using complex_t = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr int kMaxSites = 24;

/// Normalized amplitude array over the 2^n computational basis states.
class SpinState {
 public:
  /// |00...0>, all spins up.
  explicit SpinState(int n_sites);

  /// Takes ownership of an amplitude array; length must be 2^n_sites.
  SpinState(int n_sites, std::vector<complex_t> amplitudes);

  int n_sites() const { return n_sites_; }
  std::size_t dim() const { return amps_.size(); }

  std::span<const complex_t> amplitudes() const { return amps_; }
  std::span<complex_t> amplitudes() { return amps_; }

  const complex_t& operator[](std::size_t z) const { return amps_[z]; }
  complex_t& operator[](std::size_t z) { return amps_[z]; }

  double norm() const;

  bool operator==(const SpinState&) const = default;

 private:
  int n_sites_;
  std::vector<complex_t> amps_;
};

void check_site_count(int n_sites);

/// Index of a bitstring whose i-th character is the bit of site i.
std::uint64_t basis_index(std::string_view bits);

/// Basis state from a bitstring of '0'/'1' characters, character i = site i.
SpinState new_basis_state(int n_sites, std::string_view bits);
SpinState new_basis_state(int n_sites, std::uint64_t index);

/// 2x2 matrix of exp(-i angle/2 n.sigma), row-major (u00, u01, u10, u11).
std::array<complex_t, 4> rotation_matrix(const Vec3& axis, double angle);

/// In-place exp(-i angle/2 n.sigma) on one site. Axis must be unit length.
void apply_single_site_rotation(SpinState& state, int site, const Vec3& axis,
                                double angle);

/// In-place application of an arbitrary 2x2 matrix to one site.
void apply_site_matrix(SpinState& state, int site,
                       const std::array<complex_t, 4>& u);

/// Multiplies amplitude z by exp(i * phases[z]).
void apply_diagonal_phase(SpinState& state, std::span<const double> phases);

double expectation_sigma_z(const SpinState& state, int site);

/// <a|b>, conjugate-linear in a.
complex_t inner_product(const SpinState& a, const SpinState& b);

/// sigma^z eigenvalue (+1/-1) of site `site` in basis state z.
inline int spin_z(std::uint64_t z, int site) {
  return ((z >> site) & 1U) ? -1 : 1;
}

}  // namespace dtc
