#pragma once

#include <span>
#include <vector>

#include "calogero/integrator.hpp"
#include "calogero/model.hpp"

namespace calogero {

/// N complex particle coordinates and M complex soliton coordinates
/// evolving under the first-order dual flow.
struct DualState {
  std::vector<cplx> x;
  std::vector<cplx> z;
  double t = 0.0;
};

/// Time derivative of a DualState.
struct DualRates {
  std::vector<cplx> x;
  std::vector<cplx> z;
};

/// Real particle phase space plus complex soliton phase space, for the
/// second-order (Newtonian) evolution.
struct PhaseState {
  std::vector<double> x;
  std::vector<double> p;
  std::vector<cplx> z;
  std::vector<cplx> zdot;
  double t = 0.0;
};

struct Accelerations {
  std::vector<double> x;
  std::vector<cplx> z;
};

/// Energies of the two decoupled sectors. Solitons carry mass -1, so the
/// total is particles - solitons.
struct EnergyBreakdown {
  double particles = 0.0;
  cplx solitons{};
  cplx total{};
};

/// Dual flow
///   x_j' = i w(x_j) - i g sum_k K(x_j - x_k) + i g sum_a K(x_j - z_a)
///   z_a' = i w(z_a) + i g sum_b K(z_a - z_b) - i g sum_j K(z_a - x_j)
/// Pair sums run in index order, so results are bit-reproducible.
/// Throws CollisionError when two coordinates are closer than collision_eps.
DualRates dual_rhs(const ModelSpec& spec, const DualState& s);

/// Accelerations implied by the dual flow for arbitrary complex
/// coordinates: like-species pairs repel with g^2 * pair_force, particles
/// and solitons do not interact, and each body feels -V' of its species.
DualRates complex_accelerations(const ModelSpec& spec, std::span<const cplx> x, std::span<const cplx> z);

/// Newtonian right-hand side on real particle coordinates.
Accelerations newtonian_rhs(const ModelSpec& spec, const PhaseState& s);

/// max_j |Im x_j'| from dual_rhs; vanishes exactly when the particle
/// velocities are real.
double reality_residual(const ModelSpec& spec, const DualState& s);

/// Kinetic + one-body + pair energy of each sector.
EnergyBreakdown total_energy(const ModelSpec& spec, const PhaseState& s);

/// Phase-space point matching a dual state: x = Re x, p = Re x',
/// z unchanged, zdot = z'.
PhaseState phase_from_dual(const ModelSpec& spec, const DualState& s);

/// Propagates the dual flow to t +- h, forms the centered second difference
/// of the particle coordinates and compares it with newtonian_rhs.
/// Returns max_j |difference| / max(1, max_j |x_j''|), i.e. absolute for
/// gentle states and relative for fast ones. Deviation is O(h^2).
double consistency_deviation(const ModelSpec& spec, const DualState& s, double h);

/// Smallest pairwise distance among all particles and solitons
/// (infinity for fewer than two bodies).
double min_pair_distance(std::span<const cplx> x, std::span<const cplx> z);

// Flattened layouts used by the integrator ---------------------------------
//
// Dual:      [Re x_1, Im x_1, ..., Re x_N, Im x_N, Re z_1, Im z_1, ...]
// Newtonian: [x_1..x_N, p_1..p_N, Re z_1, Im z_1, ..., Re zdot_1, Im zdot_1, ...]

std::vector<double> pack(const DualState& s);
DualState unpack_dual(std::span<const double> y, int n_particles, int n_solitons, double t);

std::vector<double> pack(const PhaseState& s);
PhaseState unpack_phase(std::span<const double> y, int n_particles, int n_solitons, double t);

/// Dual flow as an ODE system: collision time from all pairs, monitor logs
/// the particle-sector energy of phase_from_dual and max |Im x_j|.
OdeSystem dual_system(const ModelSpec& spec);

/// Newtonian flow as an ODE system: collision time from interacting pairs,
/// monitor logs the particle-sector energy and max |Im x_j| (zero).
OdeSystem newtonian_system(const ModelSpec& spec);

}  // namespace calogero
