#include "qobs/reference.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qobs::reference {

std::array<double, 2> g_by_quadrature(const ObserverRealization& obs,
                                      const AveragingSpec& avg, double t) {
  const double T = avg.t_avg;
  std::array<double, 2> out{};
  for (int i = 0; i < 2; ++i) {
    out[i] = integrate(
                 [&](double tau) {
                   const Matrix prop = observer_propagator(obs, tau);
                   return (obs.c_o * prop)(0, i);
                 },
                 t - T, t) /
             T;
  }
  return out;
}

std::array<double, 2> h_by_quadrature(const PlantRealization& plant,
                                      const AveragingSpec& avg, double t) {
  const double T = avg.t_avg;
  const auto f_now = plant_output_coeffs(plant, t);
  std::array<double, 2> out{};
  for (int i = 0; i < 2; ++i) {
    out[i] = integrate([&](double tau) { return plant_output_coeffs(plant, tau)[i]; },
                       t - T, t) /
                 T -
             f_now[i];
  }
  return out;
}

std::array<double, 4> l_by_quadrature(const AugmentedSystem& aug,
                                      const AveragingSpec& avg, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("l_by_quadrature requires t > 0");
  const double lo = (t >= avg.t_avg) ? t - avg.t_avg : 0.0;
  const double window = t - lo;
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    out[i] = integrate([&](double tau) { return k_coeffs(aug, tau)[i]; }, lo, t) / window;
  }
  return out;
}

Matrix propagator_by_rk4(const Matrix& drift, double t, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("propagator_by_rk4 requires step > 0");
  const auto n_steps = static_cast<std::size_t>(std::ceil(std::abs(t) / step));
  const double h = (n_steps == 0) ? 0.0 : t / static_cast<double>(n_steps);
  Matrix x = Matrix::identity(drift.rows());
  for (std::size_t i = 0; i < n_steps; ++i) {
    const Matrix k1 = drift * x;
    const Matrix k2 = drift * (x + 0.5 * h * k1);
    const Matrix k3 = drift * (x + 0.5 * h * k2);
    const Matrix k4 = drift * (x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

std::array<double, 4> k_by_rk4(const AugmentedSystem& aug, double t, double step) {
  const Matrix x = propagator_by_rk4(aug.a_bar_a, t, step);
  return {x(2, 0), x(2, 1), x(2, 2), x(2, 3)};
}

std::vector<EquivalenceSample> oracle_equivalence_suite(const PlantRealization& plant,
                                                        int n_samples, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> log_mu(0.0, 5.0);    // 10^0 .. 10^5
  std::uniform_real_distribution<double> log_T(-3.0, 0.0);    // 10^-3 .. 10^0
  std::uniform_real_distribution<double> offset(0.0, 10.0);

  std::vector<EquivalenceSample> samples;
  samples.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    EquivalenceSample s;
    s.mu = std::pow(10.0, log_mu(rng));
    s.t_avg = std::pow(10.0, log_T(rng));
    s.t = s.t_avg + offset(rng);

    const ObserverRealization obs = build_observer({s.mu}, plant);
    const AugmentedSystem aug = build_augmented(plant, obs);
    const AveragingSpec avg{s.t_avg};

    const auto g = g_coeffs(obs, avg, s.t);
    const auto gq = g_by_quadrature(obs, avg, s.t);
    s.g_dev = std::max(std::abs(g[0] - gq[0]), std::abs(g[1] - gq[1]));

    const auto h = h_coeffs(plant, avg, s.t);
    const auto hq = h_by_quadrature(plant, avg, s.t);
    s.h_dev = std::max(std::abs(h[0] - hq[0]), std::abs(h[1] - hq[1]));

    const auto l = l_coeffs(aug, avg, s.t);
    const auto lq = l_by_quadrature(aug, avg, s.t);
    s.l_dev = 0.0;
    for (int c = 0; c < 4; ++c) s.l_dev = std::max(s.l_dev, std::abs(l[c] - lq[c]));

    samples.push_back(s);
  }
  return samples;
}

}  // namespace qobs::reference
