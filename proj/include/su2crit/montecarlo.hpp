#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "su2crit/density.hpp"
#include "su2crit/kacrice.hpp"
#include "su2crit/roots.hpp"
#include "su2crit/saddle.hpp"

namespace su2crit {

/// Equal-width edges 0, max_radius/bins, ..., max_radius.
std::vector<double> uniform_edges(double max_radius, int bins);

struct ExperimentConfig {
  int n = 12;
  std::uint64_t trials = 20000;
  std::uint64_t master_seed = 1;
  /// Ascending, starting at 0. Moduli >= bin_edges.back() go to overflow.
  std::vector<double> bin_edges = uniform_edges(6.0, 60);
  int workers = 1;
  RootOptions roots;
  /// run_trials throws RunFailure when rejected / trials reaches this.
  double max_rejection_rate = 0.01;

  double max_radius() const { return bin_edges.back(); }
};

/// Throws std::invalid_argument on n < 2, trials < 1, workers < 1 or a bad grid.
void validate(const ExperimentConfig& config);

struct TrialRecord {
  SeedPath seed;
  Su2Poly poly;
  CriticalSet critical;
};

/// One draw: sample, find the critical points, evaluate the critical values.
TrialRecord run_trial(int n, SeedPath seed, const RootOptions& opts = {});

/// Per-bin sums of per-trial counts and squared counts, kept as integers so
/// merging partial histograms is exact and order-independent.
struct RadialHistogram {
  int n = 0;
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> count_sum;
  std::vector<std::uint64_t> count_sumsq;
  std::uint64_t overflow_sum = 0;
  std::uint64_t overflow_sumsq = 0;
  std::uint64_t trials_accepted = 0;
  std::uint64_t trials_rejected = 0;

  RadialHistogram() = default;
  RadialHistogram(int degree, std::vector<double> edges);

  std::size_t bins() const { return count_sum.size(); }
  /// Bin of a modulus; bins() means overflow.
  std::size_t bin_index(double modulus) const;

  /// Adds one accepted trial's per-bin counts (overflow last).
  void record_counts(std::span<const std::uint64_t> counts);
  void record_trial(std::span<const double> moduli);
  void merge(const RadialHistogram& other);

  double mean(std::size_t bin) const;
  /// Unbiased variance of the per-trial count across accepted trials.
  double variance(std::size_t bin) const;
  double overflow_mean() const;
  double overflow_variance() const;

  friend bool operator==(const RadialHistogram&, const RadialHistogram&) = default;
};

struct RunDiagnostics {
  std::uint64_t trials = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  /// Counts indexed by RootStatus.
  std::array<std::uint64_t, 5> by_status{};
  std::vector<std::uint64_t> rejected_trials;
  std::uint64_t values_recorded = 0;
  int max_iterations = 0;
  double max_residual = 0.0;
  double max_vieta_sum_err = 0.0;
  double max_vieta_product_err = 0.0;
  /// Accepted trials whose critical-point count differed from n - 1.
  std::uint64_t wrong_count_trials = 0;

  double rejection_rate() const { return trials ? static_cast<double>(rejected) / trials : 0.0; }
  void merge(const RunDiagnostics& other);

  friend bool operator==(const RunDiagnostics&, const RunDiagnostics&) = default;
};

struct RunResult {
  RadialHistogram histogram;
  RunDiagnostics diagnostics;
};

/// Histogram of |critical values| over config.trials draws. Trial i uses
/// SeedPath{master_seed, i}; workers split the index range and their partial
/// results are merged exactly, so the output does not depend on workers.
RunResult run_trials(const ExperimentConfig& config);

struct BinComparison {
  double lower = 0.0;
  double upper = 0.0;  // +inf for the overflow bin
  double expected = 0.0;
  double observed = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  /// Empirical variance was zero; std_error fell back to sqrt(expected/trials).
  bool variance_floor = false;
};

struct CompareOptions {
  double z_threshold = 5.0;
  /// An empty bin whose expected total count exceeds this is a shape failure.
  double empty_bin_min_expected = 25.0;
  double outer_tol = 1e-9;
  double inner_tol = kDefaultQuadTol;
  /// compare() rejects a model degree that differs from the histogram's
  /// unless this is set.
  bool allow_degree_mismatch = false;
};

struct ComparisonReport {
  DensityModel model;
  int n = 0;
  std::uint64_t trials = 0;
  std::vector<BinComparison> bins;  // overflow bin last
  double max_abs_z = 0.0;
  std::size_t worst_bin = 0;
  double chi_square = 0.0;
  std::size_t dof = 0;
  bool shape_failure = false;
  std::vector<std::size_t> shape_failed_bins;
  double z_threshold = 5.0;
  /// Asymptotic models are reported, never gated.
  bool gate_enforced = true;

  bool consistent() const { return !shape_failure && max_abs_z <= z_threshold; }
  bool passed() const { return !gate_enforced || consistent(); }
};

/// Per-bin z-scores of the observed mean counts against ∫_bin of the model's
/// radial measure, using the empirical per-trial standard error. The
/// overflow bin's expectation is the remaining mass (n - 1) - sum of bins.
ComparisonReport compare(const RadialHistogram& hist, const DensityModel& model,
                         const CompareOptions& opts = {});

/// Histogram with per-trial, per-bin Poisson counts whose means are the
/// model's bin expectations. Used to self-test compare().
RadialHistogram synthetic_histogram(const DensityModel& model, int n, std::uint64_t trials,
                                    std::vector<double> edges, std::uint64_t seed);

struct ZeroFraction {
  double radius = 0.0;
  double observed = 0.0;
  double expected = 0.0;  // R^2 / (1 + R^2)
  double std_error = 0.0;
  double z = 0.0;
};

struct ZeroCheck {
  std::vector<ZeroFraction> rows;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
};

/// Fraction of the zeros of p inside |z| <= R, averaged over trials, against
/// the Fubini-Study disc mass R^2 / (1 + R^2).
ZeroCheck zero_distribution_check(int n, std::uint64_t trials, std::span<const double> radii,
                                  std::uint64_t seed, const RootOptions& opts = {});

struct MomentEntry {
  Complex expected;
  Complex observed;
  double z_re = 0.0;
  double z_im = 0.0;  // 0 on the diagonal, where the moment is real
};

struct CovarianceCheck {
  std::array<std::array<MomentEntry, 3>, 3> entries{};
  double max_abs_z = 0.0;
  double max_rel_dev = 0.0;
};

/// Sample second moments E[v_j conj(v_i)] of v = (p, p', p'') at z against
/// covariance_matrix(n, z).
CovarianceCheck covariance_empirical_check(int n, Complex z, std::uint64_t trials,
                                           std::uint64_t seed);

struct SaddleSurvey {
  std::uint64_t trials_accepted = 0;
  std::uint64_t trials_rejected = 0;
  std::uint64_t points = 0;
  std::uint64_t skipped = 0;
  std::uint64_t det_pass = 0;
  std::uint64_t laplacian_pass = 0;
  std::uint64_t both_pass = 0;

  double pass_fraction() const {
    const auto tested = points - skipped;
    return tested ? static_cast<double>(both_pass) / tested : 0.0;
  }
};

/// judge_saddle at every critical point of `trials` draws.
SaddleSurvey saddle_survey(int n, std::uint64_t trials, std::uint64_t seed,
                           const SaddleCriteria& criteria = {});

}  // namespace su2crit
