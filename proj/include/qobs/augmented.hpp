#pragma once

#include "qobs/observer.hpp"
#include "qobs/plant.hpp"

namespace qobs {

// Frozen non-disturbance tolerances: the coupling row is an algebraic
// cancellation (exact for the canonical output), the trajectory check runs
// the 6x6 flow against the uncoupled plant on a grid.
inline constexpr double kCouplingResidualTol = 1e-14;
inline constexpr double kTrajectoryResidualTol = 1e-9;

/// Plant and observer joined by the direct (Hamiltonian) coupling
/// R_c = alpha beta^T, alpha = c_p^T. Two parallel representations are kept
/// deliberately: the physical 6x6 system (realizability lives here) and the
/// reduced 4x4 drift on (z_p, z~_p, x_o) that the tracking coefficients are
/// computed from.
struct AugmentedSystem {
  double omega_p = 0.0;
  double mu = 0.0;
  Matrix r_c;        // 4x2 coupling block of the Hamiltonian
  Matrix r_a;        // 6x6 [[R_p, R_c], [R_c^T, R_o]]
  Matrix a_a;        // 6x6 drift 2 Theta_a R_a
  Matrix a_bar_a;    // 4x4 reduced drift [[a_bar_p, 0], [L c_bar_p, a_o]]
  Matrix out_plant;  // 1x4 row selecting z_p from the reduced state
  Matrix out_obs;    // 1x4 row selecting z_o from the reduced state
  QuantumLinearSystem system;
};

/// Requires the observer to have been built for the same omega_p.
AugmentedSystem build_augmented(const PlantRealization& plant, const ObserverRealization& obs);

/// Reduced 4x4 drift for a given coupling vector beta; build_augmented uses
/// the observer's beta, tests may pass beta = 0 to see the decoupled blocks.
Matrix reduced_drift(const PlantRealization& plant, const ObserverRealization& obs,
                     const Matrix& beta);

/// 6x6 drift for an arbitrary (not necessarily rank-one) coupling block, for
/// probing how the non-disturbance check fails under a malformed coupling.
Matrix augmented_drift_with_coupling(const PlantRealization& plant,
                                     const ObserverRealization& obs, const Matrix& r_c);

struct NondisturbanceReport {
  // max-abs of the row mapping observer state into dz_p/dt; zero iff the
  // coupling enters z_p's dynamics nowhere.
  double coupling_residual = 0.0;
  // grid max over t in [0, 10] of |z_p coefficients from the coupled 6x6
  // flow minus those of the uncoupled plant flow| (observer-borne
  // coefficients must vanish and are included in the max).
  double trajectory_residual = 0.0;
  bool pass = false;
};

NondisturbanceReport verify_nondisturbance(const AugmentedSystem& aug,
                                           const PlantRealization& plant);

/// Same check against an explicitly supplied 6x6 drift.
NondisturbanceReport nondisturbance_check(const Matrix& a_a, const PlantRealization& plant);

/// e^{a_bar_a t} of the reduced system, by expm. Block triangularity is
/// preserved to rounding: the plant rows never pick up observer terms.
Matrix augmented_propagator(const AugmentedSystem& aug, double t);

}  // namespace qobs
