#include <doctest.h>

#include <cmath>
#include <numeric>

#include "su2crit/errors.hpp"
#include "su2crit/montecarlo.hpp"

using namespace su2crit;

namespace {

ExperimentConfig small_config(int n, std::uint64_t trials, std::uint64_t seed, int workers = 1) {
  ExperimentConfig c;
  c.n = n;
  c.trials = trials;
  c.master_seed = seed;
  c.workers = workers;
  return c;
}

std::uint64_t total_values(const RadialHistogram& h) {
  return std::accumulate(h.count_sum.begin(), h.count_sum.end(), std::uint64_t{0}) + h.overflow_sum;
}

}  // namespace

TEST_CASE("uniform edges and config validation") {
  const auto e = uniform_edges(6.0, 60);
  REQUIRE(e.size() == 61);
  CHECK(e.front() == 0.0);
  CHECK(e.back() == 6.0);
  CHECK(e[10] == doctest::Approx(1.0));
  CHECK_THROWS_AS(uniform_edges(0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(uniform_edges(1.0, 0), std::invalid_argument);

  ExperimentConfig c;
  CHECK_NOTHROW(validate(c));
  CHECK(c.max_radius() == 6.0);
  c.n = 1;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = ExperimentConfig{};
  c.trials = 0;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = ExperimentConfig{};
  c.workers = 0;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = ExperimentConfig{};
  c.bin_edges = {0.0, 1.0, 1.0};
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c.bin_edges = {0.5, 1.0};
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
}

TEST_CASE("histogram bookkeeping") {
  RadialHistogram h(3, {0.0, 1.0, 2.0});
  CHECK(h.bin_index(0.0) == 0);
  CHECK(h.bin_index(0.999) == 0);
  CHECK(h.bin_index(1.0) == 1);
  CHECK(h.bin_index(2.0) == 2);
  const double a[] = {0.5, 2.5};
  const double b[] = {1.5, 1.7};
  h.record_trial(a);
  h.record_trial(b);
  CHECK(h.trials_accepted == 2);
  CHECK(h.mean(0) == 0.5);
  CHECK(h.mean(1) == 1.0);
  CHECK(h.overflow_mean() == 0.5);
  CHECK(h.variance(0) == doctest::Approx(0.5));
  CHECK(h.variance(1) == doctest::Approx(2.0));
  CHECK(h.overflow_variance() == doctest::Approx(0.5));

  RadialHistogram other(3, {0.0, 1.0, 2.0});
  other.record_trial(b);
  RadialHistogram ab = h;
  ab.merge(other);
  RadialHistogram ba = other;
  ba.merge(h);
  CHECK(ab == ba);
  CHECK(ab.trials_accepted == 3);
  CHECK_THROWS_AS(ab.merge(RadialHistogram(3, {0.0, 2.0})), std::invalid_argument);
}

TEST_CASE("every accepted trial contributes n-1 values") {
  for (int n : {2, 5, 12}) {
    const RunResult r = run_trials(small_config(n, 300, 17));
    CHECK(r.diagnostics.wrong_count_trials == 0);
    CHECK(total_values(r.histogram) == r.histogram.trials_accepted * (n - 1));
    CHECK(r.diagnostics.values_recorded == total_values(r.histogram));
    // conservation: accepted slots plus rejected ledger account for all trials
    CHECK(r.diagnostics.accepted + r.diagnostics.rejected == 300);
    CHECK(r.diagnostics.rejected_trials.size() == r.diagnostics.rejected);
  }
}

TEST_CASE("single trial n = 2 records one value") {
  const RunResult r = run_trials(small_config(2, 1, 1));
  CHECK(total_values(r.histogram) == 1);
}

TEST_CASE("run_trial replays a seed path") {
  const TrialRecord a = run_trial(9, SeedPath{3, 17});
  const TrialRecord b = run_trial(9, SeedPath{3, 17});
  CHECK(a.seed == b.seed);
  REQUIRE(a.critical.accepted());
  CHECK(a.critical.points == b.critical.points);
  CHECK(a.critical.values == b.critical.values);
}

TEST_CASE("results do not depend on worker count") {
  const RunResult serial = run_trials(small_config(12, 2000, 99, 1));
  for (int w : {2, 3, 8}) {
    const RunResult par = run_trials(small_config(12, 2000, 99, w));
    CHECK(par.histogram == serial.histogram);
    CHECK(par.diagnostics == serial.diagnostics);
  }
}

TEST_CASE("rejection gate fails loudly with the replay seed") {
  ExperimentConfig c = small_config(30, 50, 5);
  c.roots.max_iterations = 1;
  try {
    run_trials(c);
    FAIL("expected RunFailure");
  } catch (const RunFailure& e) {
    CHECK(std::string(e.what()).find("seed 5") != std::string::npos);
  }
}

TEST_CASE("synthetic self-test passes") {
  const DensityModel model{DensityTag::exact, 12};
  for (std::uint64_t seed : {1, 2, 3}) {
    const RadialHistogram h = synthetic_histogram(model, 12, 20000, uniform_edges(6.0, 60), seed);
    const ComparisonReport rep = compare(h, model);
    CHECK(rep.consistent());
    CHECK(rep.max_abs_z < 5.0);
    CHECK(rep.bins.size() == 61);
  }
}

TEST_CASE("compare detects a wrong degree") {
  const RadialHistogram h = synthetic_histogram(DensityModel{DensityTag::exact, 12}, 12, 20000,
                                                uniform_edges(6.0, 60), 8);
  CHECK_THROWS_AS(compare(h, DensityModel{DensityTag::exact, 11}), std::invalid_argument);
  CompareOptions opts;
  opts.allow_degree_mismatch = true;
  const ComparisonReport rep = compare(h, DensityModel{DensityTag::exact, 11}, opts);
  CHECK_FALSE(rep.passed());
}

TEST_CASE("empty bins with large expectation are shape failures") {
  RadialHistogram h(12, uniform_edges(6.0, 60));
  std::vector<std::uint64_t> counts(61, 0);
  counts[60] = 11;
  for (int t = 0; t < 2000; ++t) h.record_counts(counts);
  const ComparisonReport rep = compare(h, DensityModel{DensityTag::exact, 12});
  CHECK(rep.shape_failure);
  CHECK_FALSE(rep.shape_failed_bins.empty());
  CHECK_FALSE(rep.passed());
  CHECK(rep.bins[0].variance_floor);
}

TEST_CASE("main experiment against the exact density") {
  const RunResult r = run_trials(small_config(12, 20000, 314159, 4));
  CHECK(r.diagnostics.rejection_rate() < 1e-3);
  const ComparisonReport exact = compare(r.histogram, DensityModel{DensityTag::exact, 12});
  CHECK(exact.passed());
  CHECK(exact.max_abs_z < 5.0);
  double expected_total = 0.0;
  for (const auto& b : exact.bins) expected_total += b.expected;
  CHECK(expected_total == doctest::Approx(11.0).epsilon(1e-12));

  const ComparisonReport asym = compare(r.histogram, DensityModel{DensityTag::asymptotic, 0});
  CHECK_FALSE(asym.gate_enforced);
  CHECK(asym.passed());
  CHECK(asym.max_abs_z > 5.0);
}

TEST_CASE("zero distribution matches Fubini-Study disc mass") {
  const double radii[] = {0.5, 1.0, 2.0, 1e6};
  const ZeroCheck zc = zero_distribution_check(20, 3000, radii, 12);
  REQUIRE(zc.rows.size() == 4);
  CHECK(zc.rows[1].expected == 0.5);
  CHECK(zc.rows[2].expected == doctest::Approx(0.8));
  for (const auto& row : zc.rows) CHECK(std::abs(row.z) < 5.0);
  CHECK(zc.rows[3].observed == doctest::Approx(1.0).epsilon(1e-3));
  CHECK_THROWS_AS(zero_distribution_check(0, 10, radii, 1), std::invalid_argument);
}

TEST_CASE("sampled moments match the covariance matrix") {
  const CovarianceCheck at0 = covariance_empirical_check(6, Complex{0, 0}, 100000, 3);
  CHECK(at0.max_abs_z < 5.0);
  CHECK(at0.entries[0][0].expected.real() == doctest::Approx(1.0));
  CHECK(at0.entries[1][1].expected.real() == doctest::Approx(6.0));
  CHECK(at0.entries[2][2].expected.real() == doctest::Approx(60.0));
  CHECK(std::abs(at0.entries[0][1].expected) < 1e-14);
  const CovarianceCheck half = covariance_empirical_check(6, Complex{0.5, 0}, 100000, 4);
  CHECK(half.max_abs_z < 5.0);
  CHECK_THROWS_AS(covariance_empirical_check(1, Complex{0, 0}, 100, 1), std::invalid_argument);
}

TEST_CASE("saddle survey") {
  const SaddleSurvey s = saddle_survey(20, 100, 21);
  CHECK(s.trials_accepted == 100);
  CHECK(s.points == 100 * 19);
  CHECK(s.pass_fraction() >= 0.99);
}
