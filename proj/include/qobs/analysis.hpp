#pragma once

#include <array>
#include <string>
#include <vector>

#include "qobs/augmented.hpp"

namespace qobs {

// Frozen analysis constants: the small-t series cutoff for the running
// average, the envelope grid density, and the gain-search cap.
inline constexpr double kSmallTimeCutoff = 1e-6;
inline constexpr int kEnvelopeGridPoints = 10000;
inline constexpr double kMuSearchCap = 1e12;

/// Length T > 0 of the moving-average window applied to the outputs.
struct AveragingSpec {
  double t_avg = 0.1;
};

/// Moving-average estimation-error coefficients (g1, g2):
/// (1/T) int_{t-T}^{t} z_o - z_p dtau = g1 e1(0) + g2 e2(0), where
/// e(0) = x_o(0) - (z_p(0), z~_p(0)). Closed form at frequency omega_o;
/// amplitude decays like 1/(T omega_o) as mu grows. Requires t >= T.
std::array<double, 2> g_coeffs(const ObserverRealization& obs, const AveragingSpec& avg,
                               double t);

/// Moving-average distortion of the plant output itself:
/// (1/T) int_{t-T}^{t} z_p dtau - z_p(t) = h1 z_p(0) + h2 z~_p(0).
/// Closed form [cos, sin] * [[s'-1, -b], [b, s'-1]] with
/// s' = sin(wT)/(wT), b = (1-cos(wT))/(wT). Requires t >= T.
std::array<double, 2> h_coeffs(const PlantRealization& plant, const AveragingSpec& avg,
                               double t);

/// Instantaneous observer-output coefficients: z_o(t) = k . (z_p(0), z~_p(0),
/// x_o1(0), x_o2(0)); the z_o-row of the reduced propagator. Never converges
/// to the plant coefficients pointwise -- that is what averaging is for.
std::array<double, 4> k_coeffs(const AugmentedSystem& aug, double t);

/// Moving-average observer-output coefficients:
///   t >= T: (1/T) int_{t-T}^{t} k dtau via e^{A t}(I - e^{-A T}) A^{-1},
///   0 < t < T: the running average (1/t) int_0^t k dtau,
///   t < kSmallTimeCutoff: 4-term series of (e^{A t} - I)(A t)^{-1}.
/// Requires t > 0.
std::array<double, 4> l_coeffs(const AugmentedSystem& aug, const AveragingSpec& avg,
                               double t);

/// Worst-case squared tracking amplitudes over one period, by dense-grid
/// maximization (kEnvelopeGridPoints) with golden-section refinement, plus
/// analytic cross-checks: sup g^2 <= (2/(T w_o))^2 (1 + w_p/w_o)^2 and
/// sup h^2 = (1 - sinc(w_p T))^2 + ((1 - cos w_p T)/(w_p T))^2.
struct ErrorEnvelope {
  double mu = 0.0;
  double t_avg = 0.0;
  double sup_g_sq = 0.0;
  double sup_h_sq = 0.0;
  double combined = 0.0;  // sup over t of g1^2+g2^2+h1^2+h2^2
};

ErrorEnvelope error_envelope(const PlantRealization& plant, const ObserverRealization& obs,
                             const AveragingSpec& avg);

/// Pick (T, mu) so the combined envelope is <= epsilon: bisect T on the
/// closed-form sup h^2 <= epsilon/4, then double mu until the closed-form
/// sup g^2 <= epsilon/4, and re-verify the combined envelope on the grid.
/// Throws std::runtime_error (reporting the last state) if the gain search
/// would exceed kMuSearchCap.
struct DesignResult {
  double t_avg = 0.0;
  double mu = 0.0;
  ErrorEnvelope envelope;
};

DesignResult design_for_epsilon(const PlantRealization& plant, double epsilon);

/// One coefficient sampled on the shared time grid. Averaged coefficients
/// are undefined before the window fills, so values[0] corresponds to
/// times[start_index].
struct CoefficientSeries {
  std::string label;
  std::string basis;  // which initial-condition coefficient this multiplies
  std::size_t start_index = 0;
  std::vector<double> values;
};

/// All coefficient families on the grid t = 0, dt, ..., <= t_max, in the
/// fixed order f1,f2,k1..k4,l1..l4,g1,g2,h1,h2. Values are produced by the
/// same public evaluation routines row by row, so a consumer re-evaluating
/// the closed forms reproduces the stored numbers bit for bit. At t = 0 the
/// l-family takes its limit (0, 0, 1, 0).
struct CoefficientTrace {
  std::vector<double> times;
  std::vector<CoefficientSeries> series;
};

CoefficientTrace make_trace(const PlantRealization& plant, const ObserverRealization& obs,
                            const AugmentedSystem& aug, const AveragingSpec& avg,
                            double t_max, double dt);

}  // namespace qobs
