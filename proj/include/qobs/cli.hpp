#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qobs/analysis.hpp"

namespace qobs::cli {

/// Shared configuration of the command-line tool; defaults reproduce the
/// worked oscillator example (unit frequency, 0.1 s window, three gains).
struct RunConfig {
  double omega_p = 1.0;
  std::array<double, 2> c_p1{1.0, 0.0};
  std::vector<double> mu_list{5.0, 500.0, 50000.0};
  double t_avg = 0.1;
  double t_max = 10.0;
  double dt = 1e-3;
  std::optional<double> epsilon;  // design target, required by `design`
  std::filesystem::path output_path{"out"};
  bool inject_bad_coupling = false;  // verify-only adversarial mode
};

/// Throws std::invalid_argument on violated constraints
/// (omega_p > 0, mu > 0, 0 < dt <= t_avg <= t_max, c_p1 != 0, epsilon > 0).
void validate(const RunConfig& cfg);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// mu rendered for file names: integral values without a decimal point or
/// exponent (mu_50000.csv), anything else in round-trip form.
std::string format_mu(double mu);

std::filesystem::path mu_csv_path(const std::filesystem::path& dir, double mu);

/// CSV layout: header t,f1,f2,k1,k2,k3,k4,l1,l2,l3,l4,g1,g2,h1,h2; one row
/// per grid time; averaged columns are empty until their window fills; \n
/// newlines; values in round-trip form.
void write_trace_csv(const CoefficientTrace& trace, std::ostream& os);

// Subcommand drivers. Return the process exit code:
// 0 = pass, 1 = invariant/runtime failure, 2 = usage or config error.
int run_verify(const RunConfig& cfg, std::ostream& out);
int run_simulate(const RunConfig& cfg, std::ostream& out);
int run_sweep(const RunConfig& cfg, std::ostream& out);
int run_design(const RunConfig& cfg, std::ostream& out);

/// Full argv entry point (parses flags and the optional key=value config
/// file; command-line flags win on conflict).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qobs::cli
