#include "qobs/augmented.hpp"

#include <cmath>
#include <stdexcept>

namespace qobs {

Matrix reduced_drift(const PlantRealization& plant, const ObserverRealization& obs,
                     const Matrix& beta) {
  Matrix a(4, 4);
  a.set_block(0, 0, plant.a_bar_p);
  a.set_block(2, 2, obs.a_o);
  a.set_block(2, 0, 2.0 * (symplectic_j() * beta) * plant.c_bar_p);
  return a;
}

Matrix augmented_drift_with_coupling(const PlantRealization& plant,
                                     const ObserverRealization& obs, const Matrix& r_c) {
  if (r_c.rows() != 4 || r_c.cols() != 2)
    throw std::invalid_argument("augmented coupling block must be 4x2");
  Matrix r_a(6, 6);
  r_a.set_block(0, 0, plant.r_p);
  r_a.set_block(0, 4, r_c);
  r_a.set_block(4, 0, r_c.transposed());
  r_a.set_block(4, 4, obs.r_o);
  return make_system(r_a, 3).drift;
}

AugmentedSystem build_augmented(const PlantRealization& plant, const ObserverRealization& obs) {
  if (obs.omega_p != plant.spec.omega_p)
    throw std::invalid_argument(
        "build_augmented: observer was built for a different omega_p");

  AugmentedSystem aug;
  aug.omega_p = plant.spec.omega_p;
  aug.mu = obs.mu;

  // alpha = c_p^T picks the measured quadrature; the dyad alpha beta^T is
  // exactly the structure that keeps z_p's dynamics closed.
  aug.r_c = plant.c_p.transposed() * obs.beta.transposed();

  aug.r_a = Matrix(6, 6);
  aug.r_a.set_block(0, 0, plant.r_p);
  aug.r_a.set_block(0, 4, aug.r_c);
  aug.r_a.set_block(4, 0, aug.r_c.transposed());
  aug.r_a.set_block(4, 4, obs.r_o);

  aug.system = make_system(aug.r_a, 3);
  aug.a_a = aug.system.drift;

  aug.a_bar_a = reduced_drift(plant, obs, obs.beta);
  aug.out_plant = Matrix{{1.0, 0.0, 0.0, 0.0}};
  aug.out_obs = Matrix{{0.0, 0.0, 1.0, 0.0}};
  return aug;
}

NondisturbanceReport nondisturbance_check(const Matrix& a_a, const PlantRealization& plant) {
  if (!a_a.square() || a_a.rows() != 6)
    throw std::invalid_argument("nondisturbance_check expects a 6x6 drift");

  NondisturbanceReport rep;
  // Row mapping x_o into dz_p/dt: z_p = c_p x_p, so project the plant rows of
  // the observer-coupling column block through c_p.
  rep.coupling_residual = (plant.c_p * a_a.block(0, 4, 4, 2)).max_abs();

  // Time-domain witness: z_p coefficients of the coupled flow vs the
  // uncoupled plant rotation, plus the observer-borne coefficients that have
  // to vanish.
  Matrix c_row(1, 6);  // [c_p, 0, 0]: z_p viewed as a functional on x_a
  c_row.set_block(0, 0, plant.c_p);
  double worst = 0.0;
  for (int k = 0; k <= 200; ++k) {
    const double t = 0.05 * k;
    const Matrix row_coupled = c_row * expm(a_a, t);                  // 1x6
    const Matrix row_plant = plant.c_p * plant_propagator(plant, t);  // 1x4
    worst = std::max(worst, max_abs_diff(row_coupled.block(0, 0, 1, 4), row_plant));
    worst = std::max(worst, row_coupled.block(0, 4, 1, 2).max_abs());
  }
  rep.trajectory_residual = worst;
  rep.pass = rep.coupling_residual <= kCouplingResidualTol &&
             rep.trajectory_residual <= kTrajectoryResidualTol;
  return rep;
}

NondisturbanceReport verify_nondisturbance(const AugmentedSystem& aug,
                                           const PlantRealization& plant) {
  return nondisturbance_check(aug.a_a, plant);
}

Matrix augmented_propagator(const AugmentedSystem& aug, double t) {
  return expm(aug.a_bar_a, t);
}

}  // namespace qobs
