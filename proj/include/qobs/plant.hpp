#pragma once

#include <array>

#include "qobs/quantum_system.hpp"

namespace qobs {

/// Parameters of the oscillatory plant: two quadrature-pair modes coupled as
/// an oscillator of angular frequency omega_p, observed through the scalar
/// quadrature z_p = c_p1 . x_p1.
struct PlantSpec {
  double omega_p = 1.0;
  std::array<double, 2> c_p1{1.0, 0.0};
};

/// Assembled plant. Alongside the physical 4x4 realization we keep the
/// reduced two-dimensional system in the coordinates (z_p, z~_p), which is
/// what the tracking analysis works in: z~_p is the conjugate combination
/// that closes z_p's rotation at omega_p.
struct PlantRealization {
  PlantSpec spec;
  Matrix r_p;      // 4x4 Hamiltonian
  Matrix a_p;      // 4x4 drift [[0, w I], [-w I, 0]]
  Matrix c_p;      // 1x4 output row [c_p1, 0]
  Matrix a_bar_p;  // 2x2 reduced drift w J
  Matrix c_bar_p;  // 1x2 reduced output [1, 0]
  QuantumLinearSystem system;
};

/// Validates omega_p > 0 and c_p1 != 0, then assembles the plant whose
/// Hamiltonian couples the two modes so that each quadrature block rotates:
/// R_p = [[0, R_pc], [R_pc^T, 0]] with R_pc = -(omega_p/2) J.
PlantRealization build_plant(const PlantSpec& spec);

/// Closed-form e^{A_p t}: block rotation [[I cos, I sin], [-I sin, I cos]].
Matrix plant_propagator(const PlantRealization& plant, double t);

/// Coefficients (f1, f2) = (cos omega_p t, sin omega_p t) expressing
/// z_p(t) = f1 z_p(0) + f2 z~_p(0).
std::array<double, 2> plant_output_coeffs(const PlantRealization& plant, double t);

}  // namespace qobs
