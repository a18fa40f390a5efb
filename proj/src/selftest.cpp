#include "su2crit/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>

#include "su2crit/density.hpp"
#include "su2crit/kacrice.hpp"
#include "su2crit/oracles.hpp"
#include "su2crit/quadrature.hpp"
#include "su2crit/roots.hpp"

namespace su2crit {

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

SelftestRow timed(const std::string& name, double tolerance, const std::function<double()>& body) {
  const auto start = std::chrono::steady_clock::now();
  SelftestRow row{name, 0.0, tolerance, false, 0.0};
  try {
    row.max_residual = body();
    row.passed = row.max_residual <= tolerance;
  } catch (const std::exception&) {
    row.max_residual = std::numeric_limits<double>::infinity();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

const Complex kGridZ[] = {{0.0, 0.0}, {0.3, -0.2}, {0.7, 0.2}, {-1.1, 0.6}, {2.0, 1.5}};
const int kGridN[] = {2, 3, 5, 10, 25};

}  // namespace

std::vector<SelftestRow> run_selftest(bool full) {
  std::vector<SelftestRow> rows;

  rows.push_back(timed("exact_vs_unsimplified", 1e-8, [] {
    double worst = 0.0;
    for (int n : {3, 10, 50}) {
      for (int k = 1; k <= 50; ++k) {
        const double r = 0.1 * k;
        worst = std::max(worst, rel(density_exact(n, r), density_unsimplified(n, r)));
      }
    }
    return worst;
  }));

  rows.push_back(timed("exact_at_origin", 1e-9, [] {
    double worst = 0.0;
    for (int n = 2; n <= 20; ++n) {
      worst = std::max(worst, std::abs(density_exact(n, 0.0) - 2.0 * (n - 1) / (kPi * (n + 1))));
    }
    return worst;
  }));

  rows.push_back(timed("gh_decomposition_identity", 1e-9, [] {
    double worst = 0.0;
    for (int n : {10, 100}) {
      for (double u : {0.25, 1.0, 4.0, 16.0}) worst = std::max(worst, identity_check_firstestimate(n, u));
    }
    return worst;
  }));

  rows.push_back(timed("large_degree_route_overlap", 1e-8, [] {
    double worst = 0.0;
    for (int n : {50, 100, 150}) {
      for (double r : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        worst = std::max(worst, rel(density_via_identity(n, r), density_direct(n, r)));
      }
    }
    return worst;
  }));

  rows.push_back(timed("det_delta_vs_numeric", 1e-12, [] {
    double worst = 0.0;
    for (int n : kGridN) {
      for (Complex z : kGridZ) {
        const double numeric = oracle::determinant(oracle::covariance_direct(n, z)).real();
        worst = std::max(worst, rel(det_delta(n, z), numeric));
      }
    }
    return worst;
  }));

  rows.push_back(timed("q_form_vs_inverse", 1e-10, [] {
    double worst = 0.0;
    const Complex xs[] = {{1.0, 0.0}, {0.3, -1.2}, {-2.0, 0.5}};
    const Complex xis[] = {{0.0, 0.0}, {1.5, 0.4}, {-3.0, 2.0}};
    for (int n : kGridN) {
      for (Complex z : kGridZ) {
        for (Complex x : xs) {
          for (Complex xi : xis) {
            worst = std::max(worst, rel(q_form(n, z, x, xi), oracle::quadratic_form_by_inverse(n, z, x, xi)));
          }
        }
      }
    }
    return worst;
  }));

  rows.push_back(timed("k_z_closed_vs_quadrature", 1e-6, [] {
    const Complex z{0.7, 0.2};
    return rel(k_z_numeric(5, z, 1.3).value, k_z(5, z, 1.3));
  }));

  rows.push_back(timed("quadrature_stress", 1e-8, [] {
    auto run = [](std::function<double(double)> f, double tol) {
      QuadratureProblem q;
      q.integrand = std::move(f);
      q.rel_tol = tol;
      return integrate_checked(q, "selftest");
    };
    double worst = std::abs(run([](double) { return 1.0; }, 1e-12) - 1.0);
    worst = std::max(worst, std::abs(run([](double t) { return std::pow(t, 49); }, 1e-13) - 1.0 / 50));
    worst = std::max(worst, std::abs(run([](double s) { return 1.0 / std::sqrt(s); }, 1e-9) - 2.0));
    return worst;
  }));

  // shared between the residual and Vieta rows
  struct RootSweep {
    double residual = 0.0;
    double vieta = 0.0;
  };
  auto sweep = [] {
    RootSweep out;
    for (int n : {10, 20, 40, 60}) {
      for (std::uint64_t t = 0; t < 50; ++t) {
        const CriticalSet cs = critical_points(sample_su2(n, SeedPath{777, t}));
        if (!cs.accepted() || static_cast<int>(cs.points.size()) != n - 1) {
          return RootSweep{std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity()};
        }
        for (double r : cs.residuals) out.residual = std::max(out.residual, r);
        out.vieta = std::max({out.vieta, cs.vieta.sum_rel_err, cs.vieta.product_rel_err});
      }
    }
    return out;
  };
  RootSweep roots_seen;
  rows.push_back(timed("root_residuals", 1e-10, [&] {
    roots_seen = sweep();
    return roots_seen.residual;
  }));
  rows.push_back(timed("vieta_relations", 1e-6, [&] { return roots_seen.vieta; }));

  if (!full) return rows;

  rows.push_back(timed("covariance_vs_fd_kernel", 1e-6, [] {
    const Complex z{0.4, 0.3};
    const auto cov = covariance_matrix(6, z);
    const auto fd = oracle::covariance_fd(6, z, 1e-2);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        worst = std::max(worst, std::abs(fd[i][j] - cov.entry(i, j)) / std::abs(cov.entry(2, 2)));
      }
    }
    return worst;
  }));

  rows.push_back(timed("asymptotic_gap_sequence", 0.1, [] {
    double worst_ratio = 0.0;
    for (double r : {0.5, 1.0, 2.0}) {
      const double limit = density_asymptotic(r);
      double prev = std::numeric_limits<double>::infinity();
      double first = 0.0, last = 0.0;
      for (int n : {10, 50, 200, 800}) {
        const double gap = std::abs(density_exact(n, r) - limit);
        if (!(gap < prev)) return std::numeric_limits<double>::infinity();
        if (n == 10) first = gap;
        last = gap;
        prev = gap;
      }
      worst_ratio = std::max(worst_ratio, last / first);
    }
    return worst_ratio;
  }));

  rows.push_back(timed("mass_truncation_n5", 0.01, [] {
    const auto steps = mass_truncation_sequence(5);
    for (std::size_t i = 1; i < steps.size(); ++i) {
      if (!(steps[i].mass > steps[i - 1].mass)) return std::numeric_limits<double>::infinity();
    }
    return std::max(0.0, 1.0 - steps.back().mass / 4.0);
  }));

  return rows;
}

}  // namespace su2crit
