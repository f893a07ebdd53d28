#include "qobs/quantum_system.hpp"

#include <stdexcept>

namespace qobs {

Matrix symplectic_j() { return Matrix{{0.0, 1.0}, {-1.0, 0.0}}; }

SymplecticStructure SymplecticStructure::for_modes(std::size_t n) {
  SymplecticStructure s;
  s.mode_count = n;
  s.theta = Matrix::zero(2 * n, 2 * n);
  const Matrix j = symplectic_j();
  for (std::size_t k = 0; k < n; ++k) s.theta.set_block(2 * k, 2 * k, j);
  return s;
}

QuantumLinearSystem make_system(const Matrix& r, std::size_t n_modes) {
  if (n_modes == 0) throw std::invalid_argument("make_system requires at least one mode");
  if (!r.square() || r.rows() != 2 * n_modes)
    throw std::invalid_argument("make_system: Hamiltonian must be 2n x 2n");
  if (max_abs_diff(r, r.transposed()) > kSymmetryTol)
    throw std::invalid_argument("make_system: Hamiltonian must be symmetric");

  QuantumLinearSystem sys;
  sys.hamiltonian = r;
  sys.structure = SymplecticStructure::for_modes(n_modes);
  sys.drift = 2.0 * (sys.structure.theta * r);
  return sys;
}

RealizabilityReport check_realizability(const QuantumLinearSystem& sys) {
  const Matrix& a = sys.drift;
  const Matrix& theta = sys.structure.theta;
  RealizabilityReport rep;
  rep.residual = (a * theta + theta * a.transposed()).max_abs();
  rep.pass = rep.residual <= kRealizabilityTol;
  return rep;
}

}  // namespace qobs
