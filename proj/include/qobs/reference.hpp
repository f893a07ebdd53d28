#pragma once

#include <array>
#include <vector>

#include "qobs/analysis.hpp"

namespace qobs::reference {

// Independent evaluation routes for the closed-form coefficients: direct
// quadrature of the propagator rows and RK4 integration of the drift. These
// deliberately avoid the antiderivative identities used by the production
// code so that agreement is evidence, not tautology.

/// g by windowed quadrature of the observer propagator's output row.
std::array<double, 2> g_by_quadrature(const ObserverRealization& obs,
                                      const AveragingSpec& avg, double t);

/// h by windowed quadrature of the plant output coefficients minus their
/// instantaneous value.
std::array<double, 2> h_by_quadrature(const PlantRealization& plant,
                                      const AveragingSpec& avg, double t);

/// l by windowed (t >= T) or running (t < T) quadrature of k.
std::array<double, 4> l_by_quadrature(const AugmentedSystem& aug,
                                      const AveragingSpec& avg, double t);

/// Classical fixed-step RK4 for X' = drift X, X(0) = I.
Matrix propagator_by_rk4(const Matrix& drift, double t, double step);

/// k via RK4 instead of expm.
std::array<double, 4> k_by_rk4(const AugmentedSystem& aug, double t, double step = 1e-4);

/// One randomized closed-form-vs-quadrature comparison point.
struct EquivalenceSample {
  double mu = 0.0;
  double t_avg = 0.0;
  double t = 0.0;
  double g_dev = 0.0;  // max component deviation, closed form vs quadrature
  double h_dev = 0.0;
  double l_dev = 0.0;
};

/// Seeded sample set over mu in [1, 1e5], T in [1e-3, 1] (both log-uniform)
/// and t uniform in [T, T+10].
std::vector<EquivalenceSample> oracle_equivalence_suite(const PlantRealization& plant,
                                                        int n_samples, unsigned seed);

}  // namespace qobs::reference
