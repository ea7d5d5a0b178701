#include "dtc/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dtc/rng.hpp"

namespace dtc {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("invalid model parameters: " + what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void validate(const ModelParams& p) {
  check_site_count(p.n_sites);
  require(finite(p.g) && p.g >= 0.0, "g must be finite and >= 0");
  require(finite(p.t1) && finite(p.t2) && finite(p.t3), "durations must be finite");
  require(p.t1 >= 0.0 && p.t2 >= 0.0 && p.t3 >= 0.0, "durations must be >= 0");
  require(p.period() > 0.0, "period t1 + t2 + t3 must be > 0");
  require(finite(p.Wx) && finite(p.Wy) && finite(p.Wz), "disorder widths must be finite");
  require(p.Wx >= 0.0 && p.Wy >= 0.0 && p.Wz >= 0.0, "disorder widths must be >= 0");
  const auto& c = p.coupling;
  require(finite(c.J0), "J0 must be finite");
  require(finite(c.delta_J) && c.delta_J >= 0.0, "delta_J must be finite and >= 0");
  if (c.kind == CouplingKind::PowerLaw) {
    require(finite(c.alpha) && c.alpha > 0.0, "alpha must be > 0");
  }
}

Disorder sample_disorder(const ModelParams& params) {
  validate(params);
  Stream rng(params.seed, params.realization_index);
  const int n = params.n_sites;

  Disorder d;
  d.fields.resize(n);
  for (int i = 0; i < n; ++i) {
    d.fields[i][0] = params.Wx * rng.uniform01();
    d.fields[i][1] = params.Wy * rng.uniform01();
    d.fields[i][2] = params.Wz * rng.uniform01();
  }

  const auto& c = params.coupling;
  switch (c.kind) {
    case CouplingKind::NearestNeighbor:
      for (int i = 0; i + 1 < n; ++i) {
        const double jitter = rng.uniform(-c.delta_J, c.delta_J);
        d.bonds.push_back({i, i + 1, c.J0 + jitter});
      }
      break;
    case CouplingKind::PowerLaw:
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          d.bonds.push_back({i, j, c.J0 / std::pow(double(j - i), c.alpha)});
        }
      }
      break;
  }
  return d;
}

std::vector<double> ising_phase_table(int n_sites, const std::vector<Bond>& bonds,
                                      double t2) {
  check_site_count(n_sites);
  const std::size_t dim = std::size_t{1} << n_sites;
  std::vector<double> phases(dim, 0.0);
  if (t2 == 0.0 || bonds.empty()) return phases;
  for (std::size_t z = 0; z < dim; ++z) {
    double e = 0.0;
    for (const auto& b : bonds) {
      // z_i z_j = +1 when the two bits agree.
      const bool differ = ((z >> b.i) ^ (z >> b.j)) & 1U;
      e += differ ? -b.J : b.J;
    }
    phases[z] = t2 * e;
  }
  return phases;
}

FloquetCycle build_cycle(const ModelParams& params, const Disorder& disorder) {
  validate(params);
  const int n = params.n_sites;
  if (static_cast<int>(disorder.fields.size()) != n) {
    throw std::invalid_argument("disorder realization has wrong site count");
  }

  FloquetCycle cycle;
  cycle.n_sites = n;
  cycle.period = params.period();
  cycle.layer1_angle = std::numbers::pi * params.g;
  cycle.interaction_phases = ising_phase_table(n, disorder.bonds, params.t2);

  // exp(+i t3 h.sigma) is a rotation by 2|h| t3 about -h/|h|.
  cycle.layer3_rotations.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto& h = disorder.fields[i];
    const double mag = std::sqrt(h[0] * h[0] + h[1] * h[1] + h[2] * h[2]);
    auto& rot = cycle.layer3_rotations[i];
    if (mag > 0.0 && params.t3 > 0.0) {
      rot.axis = {-h[0] / mag, -h[1] / mag, -h[2] / mag};
      rot.angle = 2.0 * mag * params.t3;
    }
  }
  return cycle;
}

FloquetCycle build_cycle(const ModelParams& params) {
  return build_cycle(params, sample_disorder(params));
}

namespace {

void check_cycle_matches(const SpinState& state, const FloquetCycle& cycle) {
  if (state.n_sites() != cycle.n_sites) {
    throw std::invalid_argument("state has " + std::to_string(state.n_sites()) +
                                " sites but cycle has " +
                                std::to_string(cycle.n_sites));
  }
}

}  // namespace

void apply_layer1(SpinState& state, const FloquetCycle& cycle) {
  check_cycle_matches(state, cycle);
  if (cycle.layer1_angle == 0.0) return;
  const auto u = rotation_matrix({1.0, 0.0, 0.0}, cycle.layer1_angle);
  for (int i = 0; i < cycle.n_sites; ++i) apply_site_matrix(state, i, u);
}

void apply_layer2(SpinState& state, const FloquetCycle& cycle) {
  check_cycle_matches(state, cycle);
  apply_diagonal_phase(state, cycle.interaction_phases);
}

void apply_layer3(SpinState& state, const FloquetCycle& cycle) {
  check_cycle_matches(state, cycle);
  for (int i = 0; i < cycle.n_sites; ++i) {
    const auto& rot = cycle.layer3_rotations[i];
    if (rot.angle != 0.0) apply_single_site_rotation(state, i, rot.axis, rot.angle);
  }
}

void apply_cycle(SpinState& state, const FloquetCycle& cycle) {
  apply_layer1(state, cycle);
  apply_layer2(state, cycle);
  apply_layer3(state, cycle);
}

}  // namespace dtc
