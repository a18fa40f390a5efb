#include "su2crit/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "su2crit/errors.hpp"

namespace su2crit {

std::vector<double> uniform_edges(double max_radius, int bins) {
  if (bins < 1 || !(max_radius > 0.0)) {
    throw std::invalid_argument("uniform_edges: need bins >= 1 and max_radius > 0");
  }
  std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) edges[b] = max_radius * b / bins;
  return edges;
}

void validate(const ExperimentConfig& config) {
  if (config.n < 2) throw std::invalid_argument("ExperimentConfig: n must be >= 2");
  if (config.trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
  if (config.workers < 1) throw std::invalid_argument("ExperimentConfig: workers must be >= 1");
  const auto& e = config.bin_edges;
  if (e.size() < 2 || e.front() != 0.0) {
    throw std::invalid_argument("ExperimentConfig: bin edges must start at 0 with >= 1 bin");
  }
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (!(e[i] > e[i - 1])) throw std::invalid_argument("ExperimentConfig: bin edges not ascending");
  }
}

TrialRecord run_trial(int n, SeedPath seed, const RootOptions& opts) {
  TrialRecord rec{seed, sample_su2(n, seed), {}};
  rec.critical = critical_points(rec.poly, opts);
  return rec;
}

RadialHistogram::RadialHistogram(int degree, std::vector<double> edges)
    : n(degree),
      bin_edges(std::move(edges)),
      count_sum(bin_edges.size() - 1, 0),
      count_sumsq(bin_edges.size() - 1, 0) {}

std::size_t RadialHistogram::bin_index(double modulus) const {
  if (!(modulus < bin_edges.back())) return bins();
  const auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), modulus);
  return static_cast<std::size_t>(it - bin_edges.begin()) - 1;
}

void RadialHistogram::record_counts(std::span<const std::uint64_t> counts) {
  for (std::size_t b = 0; b < bins(); ++b) {
    count_sum[b] += counts[b];
    count_sumsq[b] += counts[b] * counts[b];
  }
  overflow_sum += counts[bins()];
  overflow_sumsq += counts[bins()] * counts[bins()];
  ++trials_accepted;
}

void RadialHistogram::record_trial(std::span<const double> moduli) {
  std::vector<std::uint64_t> counts(bins() + 1, 0);
  for (double m : moduli) ++counts[bin_index(m)];
  record_counts(counts);
}

void RadialHistogram::merge(const RadialHistogram& other) {
  if (other.bin_edges != bin_edges) throw std::invalid_argument("RadialHistogram: grid mismatch");
  for (std::size_t b = 0; b < bins(); ++b) {
    count_sum[b] += other.count_sum[b];
    count_sumsq[b] += other.count_sumsq[b];
  }
  overflow_sum += other.overflow_sum;
  overflow_sumsq += other.overflow_sumsq;
  trials_accepted += other.trials_accepted;
  trials_rejected += other.trials_rejected;
}

namespace {

double sample_mean(std::uint64_t sum, std::uint64_t trials) {
  return trials ? static_cast<double>(sum) / trials : 0.0;
}

double sample_variance(std::uint64_t sum, std::uint64_t sumsq, std::uint64_t trials) {
  if (trials < 2) return 0.0;
  const double t = static_cast<double>(trials);
  const double s = static_cast<double>(sum);
  const double v = (static_cast<double>(sumsq) - s * s / t) / (t - 1.0);
  return std::max(0.0, v);
}

}  // namespace

double RadialHistogram::mean(std::size_t bin) const {
  return sample_mean(count_sum[bin], trials_accepted);
}
double RadialHistogram::variance(std::size_t bin) const {
  return sample_variance(count_sum[bin], count_sumsq[bin], trials_accepted);
}
double RadialHistogram::overflow_mean() const { return sample_mean(overflow_sum, trials_accepted); }
double RadialHistogram::overflow_variance() const {
  return sample_variance(overflow_sum, overflow_sumsq, trials_accepted);
}

void RunDiagnostics::merge(const RunDiagnostics& other) {
  trials += other.trials;
  accepted += other.accepted;
  rejected += other.rejected;
  for (std::size_t i = 0; i < by_status.size(); ++i) by_status[i] += other.by_status[i];
  rejected_trials.insert(rejected_trials.end(), other.rejected_trials.begin(),
                         other.rejected_trials.end());
  std::sort(rejected_trials.begin(), rejected_trials.end());
  values_recorded += other.values_recorded;
  max_iterations = std::max(max_iterations, other.max_iterations);
  max_residual = std::max(max_residual, other.max_residual);
  max_vieta_sum_err = std::max(max_vieta_sum_err, other.max_vieta_sum_err);
  max_vieta_product_err = std::max(max_vieta_product_err, other.max_vieta_product_err);
  wrong_count_trials += other.wrong_count_trials;
}

RunResult run_trials(const ExperimentConfig& config) {
  validate(config);
  const int workers = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(config.workers), config.trials));

  std::vector<RunResult> partial(workers, RunResult{RadialHistogram(config.n, config.bin_edges), {}});
  auto work = [&config, workers, &partial](int w) {
    auto& [hist, diag] = partial[w];
    std::vector<double> moduli;
    for (std::uint64_t i = static_cast<std::uint64_t>(w); i < config.trials; i += workers) {
      const TrialRecord rec = run_trial(config.n, SeedPath{config.master_seed, i}, config.roots);
      ++diag.trials;
      const auto& cs = rec.critical;
      ++diag.by_status[static_cast<std::size_t>(cs.status)];
      diag.max_iterations = std::max(diag.max_iterations, cs.iterations);
      if (!cs.accepted()) {
        ++diag.rejected;
        ++hist.trials_rejected;
        diag.rejected_trials.push_back(i);
        continue;
      }
      ++diag.accepted;
      if (cs.values.size() != static_cast<std::size_t>(config.n - 1)) ++diag.wrong_count_trials;
      for (double r : cs.residuals) diag.max_residual = std::max(diag.max_residual, r);
      diag.max_vieta_sum_err = std::max(diag.max_vieta_sum_err, cs.vieta.sum_rel_err);
      diag.max_vieta_product_err = std::max(diag.max_vieta_product_err, cs.vieta.product_rel_err);
      moduli.clear();
      for (const auto& v : cs.values) moduli.push_back(std::abs(v));
      diag.values_recorded += moduli.size();
      hist.record_trial(moduli);
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
  }

  RunResult out{RadialHistogram(config.n, config.bin_edges), {}};
  for (const auto& p : partial) {
    out.histogram.merge(p.histogram);
    out.diagnostics.merge(p.diagnostics);
  }

  if (out.diagnostics.rejection_rate() >= config.max_rejection_rate) {
    std::ostringstream msg;
    msg << "run_trials: rejection rate " << out.diagnostics.rejection_rate() << " ("
        << out.diagnostics.rejected << " of " << out.diagnostics.trials
        << " trials) reaches the gate " << config.max_rejection_rate << "; replay with seed "
        << config.master_seed;
    if (!out.diagnostics.rejected_trials.empty()) {
      msg << ", first rejected trial " << out.diagnostics.rejected_trials.front();
    }
    throw RunFailure(msg.str());
  }
  return out;
}

ComparisonReport compare(const RadialHistogram& hist, const DensityModel& model,
                         const CompareOptions& opts) {
  if (model.needs_degree() && model.n != hist.n && !opts.allow_degree_mismatch) {
    throw std::invalid_argument("compare: model degree differs from histogram degree");
  }
  ComparisonReport rep;
  rep.model = model;
  rep.n = hist.n;
  rep.trials = hist.trials_accepted;
  rep.z_threshold = opts.z_threshold;
  rep.gate_enforced = !model.is_asymptotic();

  const double trials = static_cast<double>(hist.trials_accepted);
  const double total_mass = (model.needs_degree() ? model.n : hist.n) - 1.0;

  auto score = [&](BinComparison& bc, double variance) {
    bc.std_error = std::sqrt(variance / trials);
    if (bc.std_error == 0.0) {
      bc.variance_floor = true;
      bc.std_error = std::sqrt(std::max(bc.expected, 0.0) / trials);
    }
    const double diff = bc.observed - bc.expected;
    if (bc.std_error > 0.0) {
      bc.z = diff / bc.std_error;
    } else {
      bc.z = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
  };

  double binned = 0.0;
  for (std::size_t b = 0; b < hist.bins(); ++b) {
    BinComparison bc;
    bc.lower = hist.bin_edges[b];
    bc.upper = hist.bin_edges[b + 1];
    bc.expected = bin_expectation(model, bc.lower, bc.upper, opts.outer_tol, opts.inner_tol);
    bc.observed = hist.mean(b);
    binned += bc.expected;
    score(bc, hist.variance(b));
    if (hist.count_sum[b] == 0 && bc.expected * trials > opts.empty_bin_min_expected) {
      rep.shape_failure = true;
      rep.shape_failed_bins.push_back(b);
    }
    rep.bins.push_back(bc);
  }
  BinComparison over;
  over.lower = hist.bin_edges.back();
  over.upper = std::numeric_limits<double>::infinity();
  over.expected = total_mass - binned;
  over.observed = hist.overflow_mean();
  score(over, hist.overflow_variance());
  if (hist.overflow_sum == 0 && over.expected * trials > opts.empty_bin_min_expected) {
    rep.shape_failure = true;
    rep.shape_failed_bins.push_back(hist.bins());
  }
  rep.bins.push_back(over);

  for (std::size_t b = 0; b < rep.bins.size(); ++b) {
    const double az = std::abs(rep.bins[b].z);
    rep.chi_square += rep.bins[b].z * rep.bins[b].z;
    if (az > rep.max_abs_z || b == 0) {
      rep.max_abs_z = az;
      rep.worst_bin = b;
    }
  }
  rep.dof = rep.bins.size();
  return rep;
}

RadialHistogram synthetic_histogram(const DensityModel& model, int n, std::uint64_t trials,
                                    std::vector<double> edges, std::uint64_t seed) {
  RadialHistogram hist(n, std::move(edges));
  std::vector<double> means(hist.bins() + 1);
  double binned = 0.0;
  for (std::size_t b = 0; b < hist.bins(); ++b) {
    means[b] = bin_expectation(model, hist.bin_edges[b], hist.bin_edges[b + 1]);
    binned += means[b];
  }
  means[hist.bins()] = std::max(0.0, (model.needs_degree() ? model.n : n) - 1.0 - binned);

  std::vector<std::uint64_t> counts(hist.bins() + 1);
  for (std::uint64_t t = 0; t < trials; ++t) {
    PhiloxStream stream(SeedPath{seed, t});
    for (std::size_t b = 0; b < counts.size(); ++b) {
      counts[b] = 0;
      if (means[b] > 0.0) counts[b] = std::poisson_distribution<std::uint64_t>(means[b])(stream);
    }
    hist.record_counts(counts);
  }
  return hist;
}

ZeroCheck zero_distribution_check(int n, std::uint64_t trials, std::span<const double> radii,
                                  std::uint64_t seed, const RootOptions& opts) {
  if (n < 1) throw std::invalid_argument("zero_distribution_check: n must be >= 1");
  ZeroCheck check;
  std::vector<double> sum(radii.size(), 0.0), sumsq(radii.size(), 0.0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Su2Poly p = sample_su2(n, SeedPath{seed, t});
    const RootResult roots = polynomial_roots(p.coeffs(), opts);
    if (!roots.accepted()) {
      ++check.rejected;
      continue;
    }
    ++check.accepted;
    for (std::size_t k = 0; k < radii.size(); ++k) {
      int inside = 0;
      for (const auto& z : roots.roots) inside += std::abs(z) <= radii[k];
      const double frac = static_cast<double>(inside) / n;
      sum[k] += frac;
      sumsq[k] += frac * frac;
    }
  }
  const double m = static_cast<double>(check.accepted);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    ZeroFraction row;
    row.radius = radii[k];
    const double r2 = radii[k] * radii[k];
    row.expected = std::isinf(r2) ? 1.0 : r2 / (1.0 + r2);
    row.observed = m > 0 ? sum[k] / m : 0.0;
    const double var = m > 1 ? std::max(0.0, (sumsq[k] - sum[k] * sum[k] / m) / (m - 1.0)) : 0.0;
    row.std_error = std::sqrt(var / m);
    if (row.std_error == 0.0 && m > 0) {
      row.std_error = std::sqrt(row.expected * (1.0 - row.expected) / (m * n));
    }
    const double diff = row.observed - row.expected;
    row.z = row.std_error > 0.0 ? diff / row.std_error
                                : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    check.rows.push_back(row);
  }
  return check;
}

CovarianceCheck covariance_empirical_check(int n, Complex z, std::uint64_t trials,
                                           std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("covariance_empirical_check: n must be >= 2");
  if (trials < 2) throw std::invalid_argument("covariance_empirical_check: need >= 2 trials");
  const CovarianceMatrix3 cov = covariance_matrix(n, z);

  std::array<std::array<Complex, 3>, 3> sum{};
  std::array<std::array<double, 3>, 3> sq_re{}, sq_im{};
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Derivatives d = evaluate_derivs(sample_su2(n, SeedPath{seed, t}), z);
    const std::array<Complex, 3> v{d.value, d.first, d.second};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const Complex m = v[j] * std::conj(v[i]);
        sum[i][j] += m;
        sq_re[i][j] += m.real() * m.real();
        sq_im[i][j] += m.imag() * m.imag();
      }
    }
  }

  CovarianceCheck check;
  const double tn = static_cast<double>(trials);
  auto zscore = [tn](double s, double sq, double expected) {
    const double mean = s / tn;
    const double var = std::max(0.0, (sq - s * s / tn) / (tn - 1.0));
    const double se = std::sqrt(var / tn);
    if (se == 0.0) return mean == expected ? 0.0 : std::numeric_limits<double>::infinity();
    return (mean - expected) / se;
  };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      auto& e = check.entries[i][j];
      e.expected = cov.entry(i, j);
      e.observed = sum[i][j] / tn;
      e.z_re = zscore(sum[i][j].real(), sq_re[i][j], e.expected.real());
      e.z_im = i == j ? 0.0 : zscore(sum[i][j].imag(), sq_im[i][j], e.expected.imag());
      check.max_abs_z = std::max({check.max_abs_z, std::abs(e.z_re), std::abs(e.z_im)});
      const double scale = std::sqrt(std::abs(cov.entry(i, i)) * std::abs(cov.entry(j, j)));
      check.max_rel_dev = std::max(check.max_rel_dev, std::abs(e.observed - e.expected) / scale);
    }
  }
  return check;
}

SaddleSurvey saddle_survey(int n, std::uint64_t trials, std::uint64_t seed,
                           const SaddleCriteria& criteria) {
  SaddleSurvey survey;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const TrialRecord rec = run_trial(n, SeedPath{seed, t});
    if (!rec.critical.accepted()) {
      ++survey.trials_rejected;
      continue;
    }
    ++survey.trials_accepted;
    for (const auto& z0 : rec.critical.points) {
      ++survey.points;
      const SaddleVerdict v = judge_saddle(rec.poly, z0, criteria);
      if (v.skipped) {
        ++survey.skipped;
        continue;
      }
      survey.det_pass += v.det_nonpositive;
      survey.laplacian_pass += v.laplacian_converges;
      survey.both_pass += v.passed();
    }
  }
  return survey;
}

}  // namespace su2crit
