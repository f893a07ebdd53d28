#include "qobs/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qobs/reference.hpp"

namespace qobs::cli {

namespace {

constexpr double kOracleSuiteTol = 1e-8;
constexpr int kVerifySampleCount = 20;
constexpr unsigned kVerifySeed = 20250817;

struct CheckLine {
  std::string text;
  bool pass = false;
};

std::string residual_str(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (!(cfg.omega_p > 0.0) || !std::isfinite(cfg.omega_p))
    throw std::invalid_argument("omega-p must be positive and finite");
  if (cfg.c_p1[0] == 0.0 && cfg.c_p1[1] == 0.0)
    throw std::invalid_argument("c-p1 must be nonzero");
  if (cfg.mu_list.empty()) throw std::invalid_argument("mu list must be nonempty");
  for (double mu : cfg.mu_list)
    if (!(mu > 0.0) || !std::isfinite(mu))
      throw std::invalid_argument("every mu must be positive and finite");
  if (!(cfg.dt > 0.0) || !(cfg.dt <= cfg.t_avg) || !(cfg.t_avg <= cfg.t_max))
    throw std::invalid_argument("need 0 < dt <= t-avg <= t-max");
  if (cfg.epsilon && !(*cfg.epsilon > 0.0))
    throw std::invalid_argument("epsilon must be positive");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_mu(double mu) {
  if (mu == std::floor(mu) && std::abs(mu) < 1e15) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), static_cast<long long>(mu));
    return std::string(buf, res.ptr);
  }
  return format_double(mu);
}

std::filesystem::path mu_csv_path(const std::filesystem::path& dir, double mu) {
  return dir / ("mu_" + format_mu(mu) + ".csv");
}

void write_trace_csv(const CoefficientTrace& trace, std::ostream& os) {
  os << "t";
  for (const auto& s : trace.series) os << ',' << s.label;
  os << '\n';
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    os << format_double(trace.times[i]);
    for (const auto& s : trace.series) {
      os << ',';
      if (i >= s.start_index) os << format_double(s.values[i - s.start_index]);
    }
    os << '\n';
  }
}

namespace {

PlantRealization plant_from(const RunConfig& cfg) {
  return build_plant({cfg.omega_p, cfg.c_p1});
}

int report(std::ostream& out, const std::vector<CheckLine>& lines) {
  bool all_pass = true;
  for (const auto& l : lines) {
    out << (l.pass ? "pass" : "FAIL") << "  " << l.text << '\n';
    all_pass = all_pass && l.pass;
  }
  out << (all_pass ? "verify: all checks passed\n" : "verify: FAILED\n");
  return all_pass ? 0 : 1;
}

}  // namespace

int run_verify(const RunConfig& cfg, std::ostream& out) {
  const PlantRealization plant = plant_from(cfg);
  std::vector<CheckLine> lines;

  const auto push_realizability = [&](const std::string& name,
                                      const QuantumLinearSystem& sys) {
    const RealizabilityReport rep = check_realizability(sys);
    lines.push_back({"realizability " + name + ": residual " + residual_str(rep.residual),
                     rep.pass});
  };

  push_realizability("plant", plant.system);
  for (double mu : cfg.mu_list) {
    const ObserverRealization obs = build_observer({mu}, plant);
    const AugmentedSystem aug = build_augmented(plant, obs);
    push_realizability("observer mu=" + format_mu(mu), obs.system);
    push_realizability("augmented mu=" + format_mu(mu), aug.system);

    const NondisturbanceReport nd = verify_nondisturbance(aug, plant);
    lines.push_back({"non-disturbance mu=" + format_mu(mu) + ": coupling " +
                         residual_str(nd.coupling_residual) + ", trajectory " +
                         residual_str(nd.trajectory_residual),
                     nd.pass});
  }

  double g_dev = 0.0, h_dev = 0.0, l_dev = 0.0;
  for (const auto& s :
       reference::oracle_equivalence_suite(plant, kVerifySampleCount, kVerifySeed)) {
    g_dev = std::max(g_dev, s.g_dev);
    h_dev = std::max(h_dev, s.h_dev);
    l_dev = std::max(l_dev, s.l_dev);
  }
  lines.push_back({"oracle equivalence (" + std::to_string(kVerifySampleCount) +
                       " samples): g " + residual_str(g_dev) + ", h " +
                       residual_str(h_dev) + ", l " + residual_str(l_dev),
                   g_dev <= kOracleSuiteTol && h_dev <= kOracleSuiteTol &&
                       l_dev <= kOracleSuiteTol});

  if (cfg.inject_bad_coupling) {
    // Full-rank coupling block that feeds the observer straight into the
    // measured quadrature; the non-disturbance check must reject it.
    Matrix bad(4, 2);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 2; ++j) bad(i, j) = 1.0;
    const ObserverRealization obs = build_observer({cfg.mu_list.front()}, plant);
    const Matrix drift = augmented_drift_with_coupling(plant, obs, bad);
    const NondisturbanceReport nd = nondisturbance_check(drift, plant);
    lines.push_back({"non-disturbance (injected bad coupling) mu=" +
                         format_mu(cfg.mu_list.front()) + ": coupling " +
                         residual_str(nd.coupling_residual) + ", trajectory " +
                         residual_str(nd.trajectory_residual),
                     nd.pass});
  }

  return report(out, lines);
}

namespace {

struct SimResult {
  double mu = 0.0;
  std::filesystem::path path;
  std::size_t rows = 0;
  ErrorEnvelope envelope;
};

SimResult simulate_one(const RunConfig& cfg, const PlantRealization& plant, double mu,
                       bool with_envelope) {
  const ObserverRealization obs = build_observer({mu}, plant);
  const AugmentedSystem aug = build_augmented(plant, obs);
  const AveragingSpec avg{cfg.t_avg};
  const CoefficientTrace trace = make_trace(plant, obs, aug, avg, cfg.t_max, cfg.dt);

  SimResult res;
  res.mu = mu;
  res.rows = trace.times.size();
  res.path = mu_csv_path(cfg.output_path, mu);
  std::ofstream file(res.path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + res.path.string() + " for writing");
  write_trace_csv(trace, file);
  file.close();
  if (!file) throw std::runtime_error("error while writing " + res.path.string());
  if (with_envelope) res.envelope = error_envelope(plant, obs, avg);
  return res;
}

}  // namespace

int run_simulate(const RunConfig& cfg, std::ostream& out) {
  const PlantRealization plant = plant_from(cfg);
  std::filesystem::create_directories(cfg.output_path);
  for (double mu : cfg.mu_list) {
    const SimResult res = simulate_one(cfg, plant, mu, false);
    out << "wrote " << res.path.string() << " (" << res.rows << " rows)\n";
  }
  return 0;
}

int run_sweep(const RunConfig& cfg, std::ostream& out) {
  const PlantRealization plant = plant_from(cfg);
  std::filesystem::create_directories(cfg.output_path);

  std::vector<std::future<SimResult>> jobs;
  jobs.reserve(cfg.mu_list.size());
  for (double mu : cfg.mu_list)
    jobs.push_back(std::async(std::launch::async, simulate_one, std::cref(cfg),
                              std::cref(plant), mu, true));

  for (auto& job : jobs) {
    const SimResult res = job.get();  // report in mu order regardless of finish order
    out << "mu=" << format_mu(res.mu) << ": wrote " << res.path.string() << " ("
        << res.rows << " rows), sup_g_sq=" << format_double(res.envelope.sup_g_sq)
        << ", sup_h_sq=" << format_double(res.envelope.sup_h_sq)
        << ", combined=" << format_double(res.envelope.combined) << '\n';
  }
  return 0;
}

int run_design(const RunConfig& cfg, std::ostream& out) {
  const PlantRealization plant = plant_from(cfg);
  const DesignResult res = design_for_epsilon(plant, *cfg.epsilon);
  out << "design for epsilon=" << format_double(*cfg.epsilon) << ":\n"
      << "  t_avg = " << format_double(res.t_avg) << '\n'
      << "  mu = " << format_mu(res.mu) << '\n'
      << "  envelope: sup_g_sq=" << format_double(res.envelope.sup_g_sq)
      << ", sup_h_sq=" << format_double(res.envelope.sup_h_sq)
      << ", combined=" << format_double(res.envelope.combined) << '\n'
      << "config fragment:\n"
      << "t-avg=" << format_double(res.t_avg) << '\n'
      << "mu=" << format_mu(res.mu) << '\n';
  return 0;
}

namespace {

std::string trim_copy(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.erase(s.begin());
  while (!s.empty() && is_space(s.back())) s.pop_back();
  return s;
}

double config_number(const std::string& key, const std::string& text) {
  const std::string t = trim_copy(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw std::invalid_argument("config key '" + key + "': not a number: '" + t + "'");
  return v;
}

std::vector<double> config_numbers(const std::string& key, const std::string& text) {
  std::vector<double> vals;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) vals.push_back(config_number(key, item));
  if (vals.empty())
    throw std::invalid_argument("config key '" + key + "': empty value list");
  return vals;
}

struct ConfigTargets {
  RunConfig* cfg;
  std::vector<double>* c_p1;
  std::string* out_dir;
  double* epsilon_value;
  bool* epsilon_given;
};

// Plain key=value file, keys matching the long option names. Applied before
// the command line is parsed, so explicit flags always win.
void apply_config_file(const std::string& path, const ConfigTargets& t) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim_copy(line);
    if (s.empty() || s.front() == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value, got '" + s + "'");
    const std::string key = trim_copy(s.substr(0, eq));
    const std::string value = trim_copy(s.substr(eq + 1));
    if (key == "omega-p") {
      t.cfg->omega_p = config_number(key, value);
    } else if (key == "c-p1") {
      const auto v = config_numbers(key, value);
      if (v.size() != 2)
        throw std::invalid_argument("config key 'c-p1' needs exactly two values");
      *t.c_p1 = v;
    } else if (key == "mu") {
      t.cfg->mu_list = config_numbers(key, value);
    } else if (key == "t-avg") {
      t.cfg->t_avg = config_number(key, value);
    } else if (key == "t-max") {
      t.cfg->t_max = config_number(key, value);
    } else if (key == "dt") {
      t.cfg->dt = config_number(key, value);
    } else if (key == "epsilon") {
      *t.epsilon_value = config_number(key, value);
      *t.epsilon_given = true;
    } else if (key == "out") {
      *t.out_dir = value;
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

// Last --config occurrence on the command line, scanned ahead of CLI parsing
// so file values can serve as overridable defaults.
std::optional<std::string> config_path_from_argv(int argc, const char* const* argv) {
  std::optional<std::string> path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc)
      path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0)
      path = arg.substr(9);
  }
  return path;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  bool epsilon_given = false;
  double epsilon_value = 0.0;
  std::vector<double> c_p1{cfg.c_p1[0], cfg.c_p1[1]};
  std::string out_dir = cfg.output_path.string();
  std::string config_file;

  if (const auto path = config_path_from_argv(argc, argv)) {
    try {
      apply_config_file(*path, {&cfg, &c_p1, &out_dir, &epsilon_value, &epsilon_given});
    } catch (const std::invalid_argument& e) {
      err << "config error: " << e.what() << '\n';
      return 2;
    }
  }

  CLI::App app{"direct-coupled coherent quantum observer toolkit"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--omega-p", cfg.omega_p, "plant angular frequency");
    sub->add_option("--c-p1", c_p1, "plant output row (two values)")
        ->delimiter(',')
        ->expected(2);
    sub->add_option("--mu", cfg.mu_list, "observer gain list")->delimiter(',');
    sub->add_option("--t-avg", cfg.t_avg, "moving-average window length");
    sub->add_option("--t-max", cfg.t_max, "trace end time");
    sub->add_option("--dt", cfg.dt, "trace time step");
    sub->add_option("--epsilon", epsilon_value, "design target for the combined envelope")
        ->each([&](const std::string&) { epsilon_given = true; });
    sub->add_option("--out", out_dir, "output directory for CSV traces");
    sub->add_option("--config", config_file,
                    "key=value config file (explicit flags win on conflict)");
  };

  CLI::App* verify = app.add_subcommand("verify", "run the structural invariant suites");
  verify->add_flag("--inject-bad-coupling", cfg.inject_bad_coupling,
                   "tamper the coupling block; the non-disturbance check must fail");
  CLI::App* simulate =
      app.add_subcommand("simulate", "write one coefficient-trace CSV per mu");
  CLI::App* sweep =
      app.add_subcommand("sweep", "simulate all mu concurrently and report envelopes");
  CLI::App* design =
      app.add_subcommand("design", "choose t-avg and mu for a target envelope");
  for (CLI::App* sub : {verify, simulate, sweep, design}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  cfg.c_p1 = {c_p1[0], c_p1[1]};
  cfg.output_path = out_dir;
  if (epsilon_given) cfg.epsilon = epsilon_value;

  try {
    validate(cfg);
    if (design->parsed() && !cfg.epsilon)
      throw std::invalid_argument("design requires --epsilon");
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (verify->parsed()) return run_verify(cfg, out);
    if (simulate->parsed()) return run_simulate(cfg, out);
    if (sweep->parsed()) return run_sweep(cfg, out);
    return run_design(cfg, out);
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qobs::cli
