#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qobs/plant.hpp"

using namespace qobs;

TEST_CASE("unit-frequency plant assembly") {
  const auto plant = build_plant({});
  CHECK(plant.spec.omega_p == 1.0);

  // Hamiltonian couples the two modes antisymmetrically within the
  // cross-block: R_pc = -(w/2) J.
  CHECK(plant.r_p == Matrix{{0.0, 0.0, 0.0, -0.5},
                            {0.0, 0.0, 0.5, 0.0},
                            {0.0, 0.5, 0.0, 0.0},
                            {-0.5, 0.0, 0.0, 0.0}});
  CHECK(plant.a_p == Matrix{{0.0, 0.0, 1.0, 0.0},
                            {0.0, 0.0, 0.0, 1.0},
                            {-1.0, 0.0, 0.0, 0.0},
                            {0.0, -1.0, 0.0, 0.0}});
  CHECK(plant.c_p == Matrix{{1.0, 0.0, 0.0, 0.0}});
  CHECK(plant.a_bar_p == Matrix{{0.0, 1.0}, {-1.0, 0.0}});
  CHECK(plant.c_bar_p == Matrix{{1.0, 0.0}});
  CHECK(check_realizability(plant.system).residual == 0.0);
}

TEST_CASE("general frequency and output direction") {
  const auto plant = build_plant({2.5, {0.6, -0.8}});
  CHECK(plant.a_bar_p == Matrix{{0.0, 2.5}, {-2.5, 0.0}});
  CHECK(plant.c_p == Matrix{{0.6, -0.8, 0.0, 0.0}});
  CHECK(check_realizability(plant.system).residual == 0.0);

  // The conjugate output row [0, 0, c1, c2] closes the rotation:
  // c_p e^{A_p t} = cos(wt) c_p + sin(wt) c~_p.
  Matrix conj{{0.0, 0.0, 0.6, -0.8}};
  for (double t : {0.3, 1.7, 6.0}) {
    const Matrix lhs = plant.c_p * plant_propagator(plant, t);
    const Matrix rhs = std::cos(2.5 * t) * plant.c_p + std::sin(2.5 * t) * conj;
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("plant construction validation") {
  CHECK_THROWS_AS(build_plant({0.0, {1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_plant({-1.0, {1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_plant({std::nan(""), {1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_plant({1.0, {0.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_plant({1.0, {1.0, std::nan("")}}), std::invalid_argument);
}

TEST_CASE("closed-form propagator matches the exponential") {
  for (double w : {1.0, 2.5}) {
    const auto plant = build_plant({w, {1.0, 0.0}});
    for (double t : {0.0, 0.3, 2.0, 10.0, -4.0}) {
      CHECK(max_abs_diff(plant_propagator(plant, t), expm(plant.a_p, t)) <= 1e-10);
    }
    // Flow inverse.
    CHECK(max_abs_diff(plant_propagator(plant, 3.1) * plant_propagator(plant, -3.1),
                       Matrix::identity(4)) <= 1e-14);
  }
}

TEST_CASE("output coefficients are the plant rotation") {
  const auto plant = build_plant({});
  const auto at_zero = plant_output_coeffs(plant, 0.0);
  CHECK(at_zero[0] == 1.0);
  CHECK(at_zero[1] == 0.0);

  for (double t : {0.001, 0.4, 3.0, 9.999}) {
    const auto f = plant_output_coeffs(plant, t);
    CHECK(f[0] == std::cos(t));  // coefficients are the plain library cos/sin
    CHECK(f[1] == std::sin(t));
    CHECK(f[0] * f[0] + f[1] * f[1] == doctest::Approx(1.0).epsilon(1e-15));
  }

  const auto fast = build_plant({2.5, {1.0, 0.0}});
  const auto f = plant_output_coeffs(fast, 1.3);
  CHECK(f[0] == std::cos(2.5 * 1.3));
  CHECK(f[1] == std::sin(2.5 * 1.3));
}
