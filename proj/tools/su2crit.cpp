// su2crit: density curves, Monte Carlo experiments and the oracle self-test
// for critical values of Gaussian SU(2) random polynomials.
//
// Exit codes: 0 success, 1 statistical / identity / numerical failure,
// 2 usage error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "su2crit/density.hpp"
#include "su2crit/errors.hpp"
#include "su2crit/montecarlo.hpp"
#include "su2crit/report.hpp"
#include "su2crit/selftest.hpp"

namespace {

using namespace su2crit;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SU2CRIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("SU2CRIT_SEED is not an unsigned integer");
    }
  }
  return 1;
}

// Writes to `path`, or stdout for "-".
template <class Fn>
void emit(const std::string& path, Fn&& write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write(os);
}

struct DensityFlags {
  std::string model;
  std::optional<int> n;
  double r_min = 0.0;
  double r_max = 5.0;
  int steps = 101;
  double tol = kDefaultQuadTol;
  std::string out = "-";
};

struct SimulateFlags {
  int n = 12;
  std::uint64_t trials = 20000;
  std::uint64_t seed = 1;
  int bins = 60;
  double max_radius = 6.0;
  int workers = 1;
  std::string out = "-";
};

struct CompareFlags {
  std::string model = "exact";
  std::optional<int> model_n;
  bool synthetic = false;
};

void add_simulate_flags(CLI::App* cmd, SimulateFlags& f) {
  cmd->add_option("--n", f.n, "Polynomial degree (>= 2)")->check(CLI::Range(2, 200));
  cmd->add_option("--trials", f.trials, "Number of draws")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "Master seed (default $SU2CRIT_SEED or 1)");
  cmd->add_option("--bins", f.bins, "Number of histogram bins")->check(CLI::PositiveNumber);
  cmd->add_option("--max-radius", f.max_radius, "Last bin edge")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", f.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Output path, - for stdout");
}

ExperimentConfig make_config(const SimulateFlags& f) {
  ExperimentConfig c;
  c.n = f.n;
  c.trials = f.trials;
  c.master_seed = f.seed;
  c.bin_edges = uniform_edges(f.max_radius, f.bins);
  c.workers = f.workers;
  return c;
}

DensityModel resolve_model(const std::string& name, std::optional<int> n) {
  const auto tag = parse_density_tag(name);
  if (!tag) throw UsageError("unknown model '" + name + "'");
  DensityModel model{*tag, 0};
  if (model.needs_degree()) {
    if (!n) throw UsageError("model '" + name + "' requires --n");
    if (*n < 2) throw UsageError("--n must be >= 2");
    model.n = *n;
  }
  return model;
}

int cmd_density(const DensityFlags& f) {
  const DensityModel model = resolve_model(f.model, f.n);
  if (f.steps < 1) throw UsageError("--steps must be >= 1");
  if (!(f.r_min >= 0.0) || !(f.r_max >= f.r_min)) throw UsageError("need 0 <= r-min <= r-max");
  if (f.steps > 1 && !(f.r_max > f.r_min)) throw UsageError("r-max must exceed r-min when steps > 1");
  if (!(f.tol > 0.0)) throw UsageError("--tol must be positive");

  std::vector<double> radii(f.steps);
  for (int i = 0; i < f.steps; ++i) {
    radii[i] = f.steps == 1 ? f.r_min : f.r_min + (f.r_max - f.r_min) * i / (f.steps - 1);
  }
  radii.back() = f.steps == 1 ? f.r_min : f.r_max;
  const RadialDensityCurve curve = density_curve(model, std::move(radii), f.tol);
  emit(f.out, [&](std::ostream& os) { write_density_csv(os, curve); });
  return 0;
}

int cmd_simulate(const SimulateFlags& f) {
  const ExperimentConfig config = make_config(f);
  const RunResult run = run_trials(config);
  emit(f.out, [&](std::ostream& os) { os << simulate_payload(config, run).dump(2) << '\n'; });
  return 0;
}

int cmd_compare(const SimulateFlags& sf, const CompareFlags& cf) {
  const ExperimentConfig config = make_config(sf);
  const DensityModel model = resolve_model(cf.model, cf.model_n.value_or(sf.n));
  CompareOptions opts;
  opts.allow_degree_mismatch = cf.model_n.has_value();

  ComparisonReport report;
  nlohmann::json payload;
  if (cf.synthetic) {
    validate(config);
    const RadialHistogram hist =
        synthetic_histogram(model, config.n, config.trials, config.bin_edges, config.master_seed);
    report = compare(hist, model, opts);
    payload = compare_payload(config, report, nullptr, "synthetic");
  } else {
    const RunResult run = run_trials(config);
    report = compare(run.histogram, model, opts);
    payload = compare_payload(config, report, &run.diagnostics, "simulation");
  }
  emit(sf.out, [&](std::ostream& os) { os << payload.dump(2) << '\n'; });

  if (!report.passed()) {
    std::cerr << "compare: gate failed (max |z| = " << report.max_abs_z << " in bin "
              << report.worst_bin << (report.shape_failure ? ", shape failure" : "")
              << "); replay with --seed " << config.master_seed << " --n " << config.n
              << " --trials " << config.trials << '\n';
    return kExitFailure;
  }
  return 0;
}

int cmd_selftest(bool full) {
  const auto start = std::chrono::steady_clock::now();
  const auto rows = run_selftest(full);
  bool ok = true;
  std::cout << std::left << std::setw(30) << "identity" << std::setw(14) << "max_residual"
            << std::setw(12) << "tolerance" << std::setw(10) << "seconds" << "status\n";
  for (const auto& r : rows) {
    std::cout << std::left << std::setw(30) << r.name << std::setw(14) << std::setprecision(4)
              << r.max_residual << std::setw(12) << r.tolerance << std::setw(10)
              << std::setprecision(3) << r.seconds << (r.passed ? "ok" : "FAILED") << '\n';
    ok = ok && r.passed;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (full ? "full" : "quick") << " selftest " << (ok ? "passed" : "FAILED") << " in "
            << std::setprecision(3) << secs << " s\n";
  if (!ok) {
    std::cerr << "failed identities:";
    for (const auto& r : rows) {
      if (!r.passed) std::cerr << ' ' << r.name;
    }
    std::cerr << '\n';
  }
  return ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical values of Gaussian SU(2) random polynomials"};
  app.require_subcommand(1);

  DensityFlags df;
  auto* density = app.add_subcommand("density", "Emit an analytic density curve as CSV");
  density->add_option("--model", df.model,
                      "exact | unsimplified | asymptotic | modulus_exact | modulus_asymptotic")
      ->required();
  density->add_option("--n", df.n, "Degree, required for exact tags");
  density->add_option("--r-min", df.r_min, "First grid radius");
  density->add_option("--r-max", df.r_max, "Last grid radius");
  density->add_option("--steps", df.steps, "Number of grid points");
  density->add_option("--tol", df.tol, "Quadrature relative tolerance");
  density->add_option("--out", df.out, "Output path, - for stdout");

  SimulateFlags sim;
  SimulateFlags cmp_sim;
  CompareFlags cmp;
  auto* simulate = app.add_subcommand("simulate", "Histogram |critical values| over random draws");
  add_simulate_flags(simulate, sim);
  auto* comparecmd = app.add_subcommand("compare", "Simulate and test against an analytic model");
  add_simulate_flags(comparecmd, cmp_sim);
  comparecmd->add_option("--model", cmp.model, "Model tag to compare against");
  comparecmd->add_option("--model-n", cmp.model_n, "Model degree if different from --n");
  comparecmd->add_flag("--synthetic", cmp.synthetic, "Use Poisson draws from the model itself");

  bool full = false;
  auto* selftest = app.add_subcommand("selftest", "Run the oracle identity suite");
  auto* quick_flag = selftest->add_flag("--quick", "Quick mode (default)");
  selftest->add_flag("--full", full, "Include the large-n and mass checks")->excludes(quick_flag);

  try {
    const std::uint64_t seed = default_seed();
    sim.seed = seed;
    cmp_sim.seed = seed;
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "su2crit: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (density->parsed()) return cmd_density(df);
    if (simulate->parsed()) return cmd_simulate(sim);
    if (comparecmd->parsed()) return cmd_compare(cmp_sim, cmp);
    if (selftest->parsed()) return cmd_selftest(full);
  } catch (const UsageError& e) {
    std::cerr << "su2crit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "su2crit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "su2crit: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
