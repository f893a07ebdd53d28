#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "qobs/quantum_system.hpp"

using namespace qobs;

namespace {
Matrix random_symmetric(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) r(i, j) = r(j, i) = u(rng);
  return r;
}
}  // namespace

TEST_CASE("commutation structure blocks") {
  CHECK(symplectic_j() == Matrix{{0.0, 1.0}, {-1.0, 0.0}});

  const auto s3 = SymplecticStructure::for_modes(3);
  CHECK(s3.mode_count == 3);
  CHECK(s3.theta.rows() == 6);
  // Theta is block-diag(J, J, J) and squares to -I.
  CHECK(s3.theta.block(2, 2, 2, 2) == symplectic_j());
  CHECK(s3.theta.block(0, 2, 2, 2).max_abs() == 0.0);
  CHECK(max_abs_diff(s3.theta * s3.theta, -Matrix::identity(6)) == 0.0);
  CHECK(max_abs_diff(s3.theta.transposed(), -s3.theta) == 0.0);
}

TEST_CASE("drift assembly from the Hamiltonian") {
  // One mode, R = I: A = 2 Theta R = 2 J.
  const auto sys = make_system(Matrix::identity(2), 1);
  CHECK(sys.drift == Matrix{{0.0, 2.0}, {-2.0, 0.0}});

  // Diagonal R = diag(a, b): A = [[0, 2b], [-2a, 0]].
  const auto osc = make_system(Matrix{{5.5, 0.0}, {0.0, 0.5}}, 1);
  CHECK(osc.drift == Matrix{{0.0, 1.0}, {-11.0, 0.0}});
}

TEST_CASE("system construction validation") {
  CHECK_THROWS_AS(make_system(Matrix::identity(2), 0), std::invalid_argument);
  CHECK_THROWS_AS(make_system(Matrix::identity(3), 1), std::invalid_argument);
  CHECK_THROWS_AS(make_system(Matrix::identity(2), 2), std::invalid_argument);
  CHECK_THROWS_AS(make_system(Matrix{{0.0, 1.0}, {0.0, 0.0}}, 1), std::invalid_argument);
}

TEST_CASE("Hamiltonian drifts satisfy the realizability identity exactly") {
  // A Theta + Theta A^T = 2 Theta (R - R^T) Theta: for bitwise-symmetric R
  // every term cancels exactly, Theta being a signed permutation.
  std::mt19937 rng(31);
  for (std::size_t modes : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto sys = make_system(random_symmetric(rng, 2 * modes), modes);
      const auto rep = check_realizability(sys);
      CHECK(rep.residual == 0.0);
      CHECK(rep.pass);
    }
  }
}

TEST_CASE("perturbed drift is flagged as unrealizable") {
  auto sys = make_system(Matrix{{5.5, 0.0}, {0.0, 0.5}}, 1);
  sys.drift(0, 0) += 1e-6;  // breaks the Hamiltonian origin of the flow
  const auto rep = check_realizability(sys);
  CHECK(rep.residual >= 1e-6 * (1.0 - 1e-12));
  CHECK_FALSE(rep.pass);
}

TEST_CASE("flow preserves the commutation matrix") {
  // Generic Hamiltonians include squeezing terms, so e^{At} can grow like
  // e^{|lambda| t}; the attainable residual scales with ||U||^2 eps and the
  // tolerance must follow. (Absolute 1e-9 checks for the bounded oscillatory
  // flows this library ships live with those modules.)
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> time_draw(-5.0, 5.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto sys = make_system(random_symmetric(rng, 4), 2);
    const double t = time_draw(rng);
    const Matrix u = expm(sys.drift, t);
    const double scale = std::max(1.0, u.max_abs() * u.max_abs());
    CHECK(max_abs_diff(u * sys.structure.theta * u.transposed(), sys.structure.theta) <=
          1e-11 * scale);
  }
}
