#pragma once

// Three-stage Floquet drive: a global x rotation by pi*g, an Ising phase
// layer exp(+i t2 sum J_ij z_i z_j), and per-site disorder rotations
// exp(+i t3 h_i . sigma). Each stage is a sum of commuting terms, so the
// layered form is the exact one-period propagator.

#include <cstdint>
#include <vector>

#include "dtc/statevec.hpp"

namespace dtc {

enum class CouplingKind { NearestNeighbor, PowerLaw };

struct CouplingSpec {
  CouplingKind kind = CouplingKind::NearestNeighbor;
  double J0 = 0.25;
  /// Half-width of the per-bond uniform disorder (nearest-neighbor only).
  double delta_J = 0.1;
  /// Decay exponent (power-law only).
  double alpha = 1.5;

  bool operator==(const CouplingSpec&) const = default;
};

struct ModelParams {
  int n_sites = 10;
  double g = 0.97;
  double t1 = 1.0;
  double t2 = 1.0;
  double t3 = 1.0;
  CouplingSpec coupling;
  /// Field component h_i^c is uniform on [0, W_c].
  double Wx = 0.02;
  double Wy = 0.02;
  double Wz = 3.141592653589793;
  std::uint64_t seed = 1;
  std::uint64_t realization_index = 0;

  double period() const { return t1 + t2 + t3; }

  bool operator==(const ModelParams&) const = default;
};

/// Throws std::invalid_argument on any violated parameter invariant.
void validate(const ModelParams& params);

struct Bond {
  int i;
  int j;
  double J;

  bool operator==(const Bond&) const = default;
};

struct Disorder {
  /// Site fields (hx, hy, hz).
  std::vector<Vec3> fields;
  /// Nonzero-range couplings with i < j, sorted by (i, j).
  std::vector<Bond> bonds;

  bool operator==(const Disorder&) const = default;
};

/// Deterministic in (seed, realization_index). Fields are drawn first (site
/// by site, x then y then z), couplings afterwards, so the fields of a
/// realization do not depend on the coupling specification.
Disorder sample_disorder(const ModelParams& params);

struct SiteRotation {
  Vec3 axis{0.0, 0.0, 1.0};
  double angle = 0.0;

  bool operator==(const SiteRotation&) const = default;
};

struct FloquetCycle {
  int n_sites = 0;
  double period = 0.0;
  /// Global x rotation angle, pi*g.
  double layer1_angle = 0.0;
  /// phase[z] = t2 * sum_{i<j} J_ij z_i z_j; the amplitude gains exp(+i phase).
  std::vector<double> interaction_phases;
  std::vector<SiteRotation> layer3_rotations;

  bool operator==(const FloquetCycle&) const = default;
};

/// Phase table t2 * sum J_ij z_i z_j over all 2^n basis states.
std::vector<double> ising_phase_table(int n_sites, const std::vector<Bond>& bonds,
                                      double t2);

FloquetCycle build_cycle(const ModelParams& params, const Disorder& disorder);
FloquetCycle build_cycle(const ModelParams& params);

void apply_layer1(SpinState& state, const FloquetCycle& cycle);
void apply_layer2(SpinState& state, const FloquetCycle& cycle);
void apply_layer3(SpinState& state, const FloquetCycle& cycle);

/// One full period: layer 1, then the Ising phases, then layer 3.
void apply_cycle(SpinState& state, const FloquetCycle& cycle);

}  // namespace dtc
