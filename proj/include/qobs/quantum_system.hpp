#pragma once

#include <cstddef>

#include "qobs/matrix.hpp"

namespace qobs {

// Frozen structural tolerances.
inline constexpr double kSymmetryTol = 1e-14;
inline constexpr double kRealizabilityTol = 1e-12;

/// 2x2 commutation block [[0, 1], [-1, 0]].
Matrix symplectic_j();

/// Block-diagonal commutation matrix Theta = diag(J, ..., J) for n modes,
/// encoding [x_j, x_k] = 2 i Theta_{jk} for quadrature pairs.
struct SymplecticStructure {
  std::size_t mode_count = 0;
  Matrix theta;

  static SymplecticStructure for_modes(std::size_t n);
};

/// Linear quantum system x' = A x generated by a quadratic Hamiltonian
/// H = (1/2) x^T R x, with drift A = 2 Theta R.
struct QuantumLinearSystem {
  Matrix hamiltonian;  // R, symmetric
  SymplecticStructure structure;
  Matrix drift;  // A = 2 Theta R
};

/// Build a system from a symmetric Hamiltonian matrix R of size 2n x 2n.
/// Symmetry within kSymmetryTol and the dimension are validated.
QuantumLinearSystem make_system(const Matrix& r, std::size_t n_modes);

struct RealizabilityReport {
  double residual = 0.0;  // max-abs of A Theta + Theta A^T
  bool pass = false;      // residual <= kRealizabilityTol
};

/// Physical realizability: a drift of Hamiltonian origin satisfies
/// A Theta + Theta A^T = 0, equivalently the flow preserves the commutation
/// structure.
RealizabilityReport check_realizability(const QuantumLinearSystem& sys);

}  // namespace qobs
