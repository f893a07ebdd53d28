#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qobs/analysis.hpp"
#include "qobs/reference.hpp"

using namespace qobs;

namespace {
const double kPi = std::acos(-1.0);

struct Fixture {
  PlantRealization plant = build_plant({});
  ObserverRealization obs = build_observer({5.0}, plant);
  AugmentedSystem aug = build_augmented(plant, obs);
  AveragingSpec avg{0.1};
};

double sup_h_formula(double w, double t_avg) {
  const double x = w * t_avg;
  const double a = 1.0 - std::sin(x) / x;
  const double b = (1.0 - std::cos(x)) / x;
  return a * a + b * b;
}
}  // namespace

TEST_CASE("averaged estimation-error coefficients") {
  Fixture f;

  SUBCASE("vanish when the window spans whole observer periods") {
    const AveragingSpec full{2.0 * kPi / f.obs.omega_o};  // ~1.894
    for (double t : {full.t_avg, 2.0, 4.0}) {
      const auto g = g_coeffs(f.obs, full, t);
      CHECK(std::fabs(g[0]) <= 1e-12);
      CHECK(std::fabs(g[1]) <= 1e-12);
    }
  }

  SUBCASE("agree with direct quadrature") {
    for (double t : {0.1, 0.35, 1.0, 5.0}) {
      const auto closed = g_coeffs(f.obs, f.avg, t);
      const auto quad = reference::g_by_quadrature(f.obs, f.avg, t);
      CHECK(std::fabs(closed[0] - quad[0]) <= 1e-10);
      CHECK(std::fabs(closed[1] - quad[1]) <= 1e-10);
    }
  }

  SUBCASE("reject an unfilled window and a bad window") {
    CHECK_THROWS_AS(g_coeffs(f.obs, f.avg, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(g_coeffs(f.obs, AveragingSpec{0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(g_coeffs(f.obs, AveragingSpec{-0.1}, 1.0), std::invalid_argument);
  }
}

TEST_CASE("averaged output-distortion coefficients") {
  Fixture f;

  SUBCASE("pinned value at the end of the first window") {
    // (1/T) int_0^T cos - cos(T) with T = 0.1.
    const auto h = h_coeffs(f.plant, f.avg, 0.1);
    CHECK(h[0] == doctest::Approx(10.0 * std::sin(0.1) - std::cos(0.1)).epsilon(1e-12));
  }

  SUBCASE("agree with direct quadrature") {
    for (double t : {0.1, 0.7, 3.0, 9.9}) {
      const auto closed = h_coeffs(f.plant, f.avg, t);
      const auto quad = reference::h_by_quadrature(f.plant, f.avg, t);
      CHECK(std::fabs(closed[0] - quad[0]) <= 1e-10);
      CHECK(std::fabs(closed[1] - quad[1]) <= 1e-10);
    }
  }

  SUBCASE("amplitude is constant in time") {
    const double expect = sup_h_formula(1.0, 0.1);
    for (double t : {0.1, 0.9, 4.2, 8.8}) {
      const auto h = h_coeffs(f.plant, f.avg, t);
      CHECK(h[0] * h[0] + h[1] * h[1] == doctest::Approx(expect).epsilon(1e-12));
    }
  }

  SUBCASE("window validation") {
    CHECK_THROWS_AS(h_coeffs(f.plant, f.avg, 0.099), std::invalid_argument);
  }
}

TEST_CASE("instantaneous output coefficients") {
  Fixture f;

  SUBCASE("identity at t = 0") {
    const auto k = k_coeffs(f.aug, 0.0);
    CHECK(k[0] == 0.0);
    CHECK(k[1] == 0.0);
    CHECK(k[2] == 1.0);
    CHECK(k[3] == 0.0);
  }

  SUBCASE("agree with an independent integrator") {
    for (double t : {0.5, 2.0}) {
      const auto k = k_coeffs(f.aug, t);
      const auto rk = reference::k_by_rk4(f.aug, t);
      for (int i = 0; i < 4; ++i) CHECK(std::fabs(k[i] - rk[i]) <= 1e-8);
    }
  }

  SUBCASE("decompose through the error flow") {
    // z_o(t) = f . z(0) + [observer flow](x_o(0) - z(0)), so the x_o-facing
    // coefficients are the observer propagator's output row and the
    // z-facing ones are the plant rotation minus it.
    for (double mu : {5.0, 500.0}) {
      const auto obs = build_observer({mu}, f.plant);
      const auto aug = build_augmented(f.plant, obs);
      for (double t : {0.3, 1.7, 6.4}) {
        const auto k = k_coeffs(aug, t);
        const Matrix p = observer_propagator(obs, t);
        CHECK(std::fabs(k[2] - p(0, 0)) <= 1e-10);
        CHECK(std::fabs(k[3] - p(0, 1)) <= 1e-10);
        CHECK(std::fabs(k[0] + p(0, 0) - std::cos(t)) <= 1e-10);
        CHECK(std::fabs(k[1] + p(0, 1) - std::sin(t)) <= 1e-10);
      }
    }
  }

  SUBCASE("tracks the plant only on average, never pointwise") {
    // k1 - f1 = -cos(w_o t): unit amplitude for every gain.
    for (double mu : {5.0, 500.0, 50000.0}) {
      const auto obs = build_observer({mu}, f.plant);
      const auto aug = build_augmented(f.plant, obs);
      double worst = 0.0;
      for (int i = 0; i <= 400; ++i) {
        const double t = 0.025 * i;
        const auto k = k_coeffs(aug, t);
        worst = std::max(worst, std::fabs(k[0] - std::cos(t)));
      }
      CHECK(worst >= 0.99);
    }
  }
}

TEST_CASE("moving-average output coefficients") {
  Fixture f;

  SUBCASE("windowed and running branches meet at the window edge") {
    for (double mu : {5.0, 500.0}) {
      const auto aug = build_augmented(f.plant, build_observer({mu}, f.plant));
      // Two algebraically equal but numerically distinct routes at t = T.
      const Matrix a = aug.a_bar_a;
      const Matrix manual =
          ((expm(a, 0.1) - Matrix::identity(4)) * inverse(a)) * (1.0 / 0.1);
      const auto l = l_coeffs(aug, f.avg, 0.1);
      for (int i = 0; i < 4; ++i) CHECK(std::fabs(l[i] - manual(2, i)) <= 1e-12);

      const auto lm = l_coeffs(aug, f.avg, 0.1 - 1e-6);
      const auto lp = l_coeffs(aug, f.avg, 0.1 + 1e-6);
      for (int i = 0; i < 4; ++i) CHECK(std::fabs(lp[i] - lm[i]) <= 1e-3);
    }
  }

  SUBCASE("running average approaches the identity row at t -> 0") {
    const auto l = l_coeffs(f.aug, f.avg, 1e-7);  // series branch
    CHECK(std::fabs(l[0]) <= 1e-12);
    CHECK(l[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(l[3] == doctest::Approx(0.5e-7).epsilon(1e-6));
    // Continuity across the series cutoff.
    const auto lr = l_coeffs(f.aug, f.avg, 2e-6);  // running branch
    CHECK(std::fabs(lr[3] - 1e-6) <= 1e-9);
  }

  SUBCASE("agree with direct quadrature in both branches") {
    for (double t : {0.04, 0.1, 0.35, 2.0}) {
      const auto closed = l_coeffs(f.aug, f.avg, t);
      const auto quad = reference::l_by_quadrature(f.aug, f.avg, t);
      for (int i = 0; i < 4; ++i) CHECK(std::fabs(closed[i] - quad[i]) <= 1e-9);
    }
  }

  SUBCASE("rejects nonpositive times") {
    CHECK_THROWS_AS(l_coeffs(f.aug, f.avg, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(l_coeffs(f.aug, f.avg, -1.0), std::invalid_argument);
  }
}

TEST_CASE("averaging ties the three coefficient families together") {
  // Averaging the pointwise decomposition z_o = f.z + P_o.e gives
  // l_z = f + h - g and l_e = g; the averaged tracking error then splits
  // into an estimation part (g) and a distortion part (h).
  Fixture f;
  for (double mu : {5.0, 500.0, 50000.0}) {
    const auto obs = build_observer({mu}, f.plant);
    const auto aug = build_augmented(f.plant, obs);
    for (double t : {0.15, 1.0, 5.0, 9.95}) {
      const auto l = l_coeffs(aug, f.avg, t);
      const auto g = g_coeffs(obs, f.avg, t);
      const auto h = h_coeffs(f.plant, f.avg, t);
      const auto ff = plant_output_coeffs(f.plant, t);
      CHECK(std::fabs(l[2] - g[0]) <= 1e-8);
      CHECK(std::fabs(l[3] - g[1]) <= 1e-8);
      CHECK(std::fabs((l[0] - ff[0]) - (h[0] - g[0])) <= 1e-8);
      CHECK(std::fabs((l[1] - ff[1]) - (h[1] - g[1])) <= 1e-8);
    }
  }
}

TEST_CASE("worst-case envelope") {
  Fixture f;

  SUBCASE("matches the closed forms it cross-checks") {
    const auto env = error_envelope(f.plant, f.obs, f.avg);
    CHECK(env.sup_h_sq == doctest::Approx(sup_h_formula(1.0, 0.1)).epsilon(1e-9));
    CHECK(env.sup_h_sq == doctest::Approx(2.4986114582836814e-3).epsilon(1e-12));
    // h's amplitude is flat in t, so the combined sup splits exactly.
    CHECK(env.combined ==
          doctest::Approx(env.sup_g_sq + env.sup_h_sq).epsilon(1e-9));
  }

  SUBCASE("estimation amplitude shrinks as the gain grows") {
    double prev = 2.0;
    for (double mu : {5.0, 500.0, 50000.0}) {
      const auto env =
          error_envelope(f.plant, build_observer({mu}, f.plant), f.avg);
      CHECK(env.sup_g_sq < prev);
      prev = env.sup_g_sq;
    }
    CHECK(prev <= 1e-2);  // mu = 5e4 pushes estimation error below 1e-2
  }

  SUBCASE("distortion scales like the square of the window") {
    const auto wide = error_envelope(f.plant, f.obs, AveragingSpec{0.1});
    const auto narrow = error_envelope(f.plant, f.obs, AveragingSpec{0.05});
    const double ratio = wide.sup_h_sq / narrow.sup_h_sq;
    CHECK(ratio >= 3.9);
    CHECK(ratio <= 4.1);
  }

  SUBCASE("distortion grows with the window") {
    double prev = 0.0;
    for (double t_avg : {0.02, 0.05, 0.1, 0.5, 1.0}) {
      const auto env = error_envelope(f.plant, f.obs, AveragingSpec{t_avg});
      CHECK(env.sup_h_sq > prev);
      prev = env.sup_h_sq;
    }
  }
}

TEST_CASE("design search") {
  Fixture f;

  SUBCASE("loose target accepts the widest window and smallest gain") {
    const auto d = design_for_epsilon(f.plant, 4.0);
    CHECK(d.t_avg == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.mu == 1.0);
    CHECK(d.envelope.combined <= 4.0);
  }

  SUBCASE("moderate targets are met and independently re-verified") {
    for (double eps : {0.1, 0.01}) {
      const auto d = design_for_epsilon(f.plant, eps);
      CHECK(d.envelope.combined <= eps);
      const auto env = error_envelope(f.plant, build_observer({d.mu}, f.plant),
                                      AveragingSpec{d.t_avg});
      CHECK(env.combined <= eps);
    }
  }

  SUBCASE("tight target still lands under the gain cap") {
    const auto d = design_for_epsilon(f.plant, 1e-6);
    CHECK(d.envelope.combined <= 1e-6);
    CHECK(d.mu <= kMuSearchCap);
  }

  SUBCASE("unreachable target reports the cap") {
    CHECK_THROWS_AS(design_for_epsilon(f.plant, 1e-14), std::runtime_error);
  }

  SUBCASE("rejects nonpositive targets") {
    CHECK_THROWS_AS(design_for_epsilon(f.plant, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(design_for_epsilon(f.plant, -1.0), std::invalid_argument);
  }
}

TEST_CASE("coefficient trace") {
  Fixture f;
  const auto trace = make_trace(f.plant, f.obs, f.aug, f.avg, 10.0, 1e-3);

  SUBCASE("grid layout") {
    CHECK(trace.times.size() == 10001);
    CHECK(trace.times.front() == 0.0);
    CHECK(trace.times[100] == 0.1);  // 100 * 1e-3 rounds to exactly 0.1
    CHECK(trace.times.back() == 10.0);
    CHECK(trace.series.size() == 14);
  }

  SUBCASE("series order, labels, and start indices") {
    const char* labels[] = {"f1", "f2", "k1", "k2", "k3", "k4", "l1",
                            "l2", "l3", "l4", "g1", "g2", "h1", "h2"};
    for (int i = 0; i < 14; ++i) CHECK(trace.series[i].label == labels[i]);
    CHECK(trace.series[0].basis == "z_p(0)");
    CHECK(trace.series[5].basis == "x_o2(0)");
    CHECK(trace.series[10].basis == "e1(0)");
    for (int i = 0; i < 10; ++i) {
      CHECK(trace.series[i].start_index == 0);
      CHECK(trace.series[i].values.size() == 10001);
    }
    for (int i = 10; i < 14; ++i) {
      CHECK(trace.series[i].start_index == 100);  // first grid point >= t_avg
      CHECK(trace.series[i].values.size() == 10001 - 100);
    }
  }

  SUBCASE("values reproduce the public evaluation routines bit for bit") {
    const std::size_t i = 250;  // t = 0.25
    const double t = trace.times[i];
    const auto ff = plant_output_coeffs(f.plant, t);
    const auto k = k_coeffs(f.aug, t);
    const auto l = l_coeffs(f.aug, f.avg, t);
    const auto g = g_coeffs(f.obs, f.avg, t);
    const auto h = h_coeffs(f.plant, f.avg, t);
    CHECK(trace.series[0].values[i] == ff[0]);
    CHECK(trace.series[1].values[i] == ff[1]);
    for (int c = 0; c < 4; ++c) {
      CHECK(trace.series[2 + c].values[i] == k[c]);
      CHECK(trace.series[6 + c].values[i] == l[c]);
    }
    CHECK(trace.series[10].values[i - 100] == g[0]);
    CHECK(trace.series[11].values[i - 100] == g[1]);
    CHECK(trace.series[12].values[i - 100] == h[0]);
    CHECK(trace.series[13].values[i - 100] == h[1]);

    // f is the plain library cos/sin, bitwise.
    CHECK(trace.series[0].values[777] == std::cos(trace.times[777]));
    CHECK(trace.series[1].values[777] == std::sin(trace.times[777]));
  }

  SUBCASE("running average takes its limit at t = 0") {
    CHECK(trace.series[6].values[0] == 0.0);
    CHECK(trace.series[7].values[0] == 0.0);
    CHECK(trace.series[8].values[0] == 1.0);
    CHECK(trace.series[9].values[0] == 0.0);
  }

  SUBCASE("grid validation") {
    CHECK_THROWS_AS(make_trace(f.plant, f.obs, f.aug, f.avg, 10.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_trace(f.plant, f.obs, f.aug, f.avg, -1.0, 1e-3),
                    std::invalid_argument);
  }
}
