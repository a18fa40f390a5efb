#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "su2crit/density.hpp"
#include "su2crit/errors.hpp"
#include "su2crit/oracles.hpp"
#include "su2crit/quadrature.hpp"

using namespace su2crit;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("profile helpers") {
  for (int n : {2, 3, 10, 1000}) {
    CHECK(y_n(0.0, n) == 0.0);
    CHECK(y_n(1.0, n) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(z_fn(1.0, n) == doctest::Approx(-1.0).epsilon(1e-14));
    for (int k = 0; k <= 100; ++k) {
      const double t = k / 100.0;
      CHECK(y_n(t, n) >= 0.0);
      CHECK(y_n(t, n) <= 1.0 + 1e-15);
    }
  }
  CHECK(z_limit(0.0) == 0.0);
  CHECK(z_limit(1.0) == -1.0);
  CHECK(z_fn(0.5, 10) < z_fn(0.5, 20));
  CHECK(z_fn(0.5, 20) < z_limit(0.5));
}

TEST_CASE("z_fn monotone chain on a dense grid") {
  for (int k = 1; k < 1000; ++k) {
    const double s = k / 1000.0;
    double prev = z_fn(s, 1);
    for (int n = 2; n <= 64; n *= 2) {
      const double cur = z_fn(s, n);
      CHECK(cur >= prev);
      prev = cur;
    }
    CHECK(prev <= z_limit(s));
    CHECK(z_fn(s, 100000) == doctest::Approx(z_limit(s)).epsilon(1e-4));
  }
}

TEST_CASE("g and h at u = 0") {
  for (int n : {2, 10, 500}) {
    CHECK(g_fn(n, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(h_fn(n, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g_minus_exp_over_u(n, 0.0) == doctest::Approx(1.0 - 2.0 / (n + 1)).epsilon(1e-14));
  }
  CHECK(h_limit(0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("g_fn increases to 1") {
  double prev = 0.0;
  for (int n : {10, 100, 1000, 10000}) {
    const double g = g_fn(n, 1.0);
    CHECK(g > prev);
    CHECK(g < 1.0);
    prev = g;
  }
  CHECK(prev > 0.999);
}

TEST_CASE("h_fn tends to the limit integral") {
  const double limit = h_limit(1.0);
  double prev_gap = INFINITY;
  for (int n : {10, 100, 1000}) {
    const double gap = limit - h_fn(n, 1.0);
    CHECK(gap > 0.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-3);
}

TEST_CASE("h_fn equals its t-form") {
  for (int n : {3, 20}) {
    for (double u : {0.5, 3.0}) {
      QuadratureProblem q;
      q.integrand = [n, u](double t) { return n * std::pow(t, n - 1) * std::exp(-y_n(t, n) * u); };
      q.rel_tol = 1e-12;
      CHECK(rel(h_fn(n, u), integrate_checked(q, "h t-form")) < 1e-10);
    }
  }
}

TEST_CASE("density spot values at the origin") {
  CHECK(density_exact(3, 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
  CHECK(density_unsimplified(2, 0.0) == doctest::Approx(2.0 / (3.0 * kPi)).epsilon(1e-12));
  CHECK(density_exact(2, 0.0) == doctest::Approx(2.0 / (3.0 * kPi)).epsilon(1e-12));
  for (int n = 2; n <= 20; ++n) {
    CHECK(std::abs(density_exact(n, 0.0) - 2.0 * (n - 1) / (kPi * (n + 1))) < 1e-9);
  }
  for (int n : {150, 400}) CHECK(rel(density_exact(n, 0.0), 2.0 * (n - 1) / (kPi * (n + 1))) < 1e-9);
  CHECK(std::abs(density_asymptotic(0.0) - 2.0 / kPi) < 1e-12);
  CHECK(density_modulus_asymptotic(0.0) == 0.0);
  CHECK(density_modulus_exact(7, 0.0) == 0.0);
}

TEST_CASE("integration by parts: exact equals unsimplified") {
  const auto start = std::chrono::steady_clock::now();
  for (int n : {3, 10, 50}) {
    for (int k = 1; k <= 50; ++k) {
      const double r = 0.1 * k;
      CAPTURE(n);
      CAPTURE(r);
      CHECK(rel(density_exact(n, r), density_unsimplified(n, r)) < 1e-8);
    }
  }
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 10.0);
}

TEST_CASE("t-substitution agrees with the original rho-integral") {
  for (int n : {2, 3, 7}) {
    for (double r : {0.0, 0.3, 1.0, 2.5}) {
      CHECK(rel(density_unsimplified(n, r), oracle::density_unsimplified_rho(n, r, 1e-11)) < 1e-8);
    }
  }
}

TEST_CASE("n = 2 series") {
  // D = (e^{-u}/pi) ∫_0^1 (1 - s^2) e^{u s^2} ds = (e^{-u}/pi) Σ_k u^k/k! 2/((2k+1)(2k+3))
  auto series = [](double r) {
    const double u = r * r;
    double term = 1.0, sum = 0.0;
    for (int k = 0; k < 200; ++k) {
      if (k > 0) term *= u / k;
      sum += term * 2.0 / ((2.0 * k + 1) * (2.0 * k + 3));
    }
    return std::exp(-u) * sum / kPi;
  };
  for (double r : {0.0, 0.2, 1.0, 3.0}) CHECK(rel(density_exact(2, r), series(r)) < 1e-10);
}

TEST_CASE("g/h decomposition identity residuals") {
  for (int n : {10, 100}) {
    for (double u : {0.25, 1.0, 4.0, 16.0}) {
      CAPTURE(n);
      CAPTURE(u);
      CHECK(identity_check_firstestimate(n, u) <= 1e-9);
    }
  }
}

TEST_CASE("(g - e^-u)/u has no cancellation as u -> 0") {
  for (int n : {10, 100}) {
    // quadratic extrapolation from u = 1e-3, 2e-3, 3e-3 towards 1e-6
    const double f1 = g_minus_exp_over_u(n, 1e-3), f2 = g_minus_exp_over_u(n, 2e-3),
                 f3 = g_minus_exp_over_u(n, 3e-3);
    const double u = 1e-6;
    const double a = (u - 2e-3) * (u - 3e-3) / ((1e-3 - 2e-3) * (1e-3 - 3e-3));
    const double b = (u - 1e-3) * (u - 3e-3) / ((2e-3 - 1e-3) * (2e-3 - 3e-3));
    const double c = (u - 1e-3) * (u - 2e-3) / ((3e-3 - 1e-3) * (3e-3 - 2e-3));
    const double extrapolated = a * f1 + b * f2 + c * f3;
    CHECK(rel(g_minus_exp_over_u(n, u), extrapolated) < 1e-6);
    CHECK(identity_check_firstestimate(n, u) <= 1e-9);
  }
}

TEST_CASE("large-degree routes overlap") {
  for (int n : {50, 75, 100, 125, 150}) {
    for (double r : {0.0, 0.3, 1.0, 2.0, 5.0}) {
      CAPTURE(n);
      CAPTURE(r);
      CHECK(rel(density_via_identity(n, r), density_direct(n, r)) < 1e-8);
    }
  }
}

TEST_CASE("densities are nonnegative and finite") {
  for (int n : {2, 12, 101, 800}) {
    for (double r : {0.0, 0.01, 1.0, 10.0, 1e3, 1e8}) {
      const double d = density_exact(n, r);
      CHECK(std::isfinite(d));
      CHECK(d >= 0.0);
    }
  }
  for (double r : {0.0, 1e-5, 1.0, 30.0}) {
    CHECK(density_asymptotic(r) > 0.0);
    CHECK(density_modulus_asymptotic(r) >= 0.0);
  }
}

TEST_CASE("modulus forms carry the 2 pi r factor") {
  for (double x : {1e-4, 0.1, 0.5, 1.0, 2.0, 4.0}) {
    CHECK(rel(density_modulus_asymptotic(x), 2 * kPi * x * density_asymptotic(x)) < 1e-12);
    CHECK(rel(density_modulus_exact(9, x), 2 * kPi * x * density_exact(9, x)) < 1e-14);
  }
}

TEST_CASE("asymptotic removable singularity") {
  const double r = 1e-5;
  const double expected = (1.0 - 0.5 * r * r) / kPi + h_limit(r * r) / kPi;
  CHECK(rel(density_asymptotic(r), expected) < 1e-12);
}

TEST_CASE("asymptotic gap sequence") {
  for (double r : {0.5, 1.0, 2.0}) {
    const double limit = density_asymptotic(r);
    double first = 0.0, prev = INFINITY;
    for (int n : {10, 50, 200, 800}) {
      const double gap = std::abs(density_exact(n, r) - limit);
      CHECK(gap < prev);
      if (n == 10) first = gap;
      prev = gap;
    }
    CHECK(prev < 0.1 * first);
  }
}

TEST_CASE("bin expectations against the swap identity") {
  // ∫_a^b 2 pi r D dr = (n-1) (g_n(a^2) - g_n(b^2)) after exchanging the integrals.
  for (int n : {3, 12, 40}) {
    for (auto [a, b] : {std::pair{0.0, 0.1}, std::pair{0.5, 0.6}, std::pair{1.0, 3.0}, std::pair{5.9, 6.0}}) {
      const double lhs = bin_expectation(DensityModel{DensityTag::exact, n}, a, b);
      const double rhs = (n - 1) * (g_fn(n, a * a, 1e-12) - g_fn(n, b * b, 1e-12));
      CAPTURE(n);
      CAPTURE(a);
      CHECK(rel(lhs, rhs) < 1e-8);
    }
  }
}

TEST_CASE("modulus bin expectation equals complex-plane bin expectation") {
  const double a = 0.4, b = 1.1;
  CHECK(rel(bin_expectation(DensityModel{DensityTag::modulus_exact, 8}, a, b),
            bin_expectation(DensityModel{DensityTag::exact, 8}, a, b)) < 1e-9);
  CHECK(rel(bin_expectation(DensityModel{DensityTag::modulus_asymptotic, 0}, a, b),
            bin_expectation(DensityModel{DensityTag::asymptotic, 0}, a, b)) < 1e-9);
}

TEST_CASE("mass truncation") {
  for (int n : {5, 10, 12}) {
    const auto steps = mass_truncation_sequence(n);
    REQUIRE(steps.size() >= 2);
    CHECK(steps.front().radius == 4.0);
    for (std::size_t i = 1; i < steps.size(); ++i) {
      CHECK(steps[i].radius == 2 * steps[i - 1].radius);
      CHECK(steps[i].mass > steps[i - 1].mass);
    }
    CHECK(steps.back().mass >= 0.99 * (n - 1));
    CHECK(steps.back().mass <= (n - 1) * (1 + 1e-9));
    const double last_gain = steps.back().mass - steps[steps.size() - 2].mass;
    CHECK(last_gain < 1e-4 * steps.back().mass);
  }
}

TEST_CASE("modulus density has one interior peak on (0, 3) for n = 50") {
  auto f = [](double x) { return density_modulus_exact(50, x); };
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double lo = 0.0, hi = 3.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-7) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = f(x1);
    }
  }
  const double peak = 0.5 * (lo + hi);
  CHECK(peak > 0.05);
  CHECK(peak < 2.95);
  // unimodal on a grid: increasing before, decreasing after
  double prev = f(0.0);
  for (int k = 1; k <= 300; ++k) {
    const double x = 0.01 * k;
    const double cur = f(x);
    if (x < peak - 0.01) CHECK(cur > prev);
    if (x > peak + 0.01) CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("model tags") {
  for (auto tag : {DensityTag::exact, DensityTag::unsimplified, DensityTag::asymptotic, DensityTag::modulus_exact,
                   DensityTag::modulus_asymptotic}) {
    CHECK(parse_density_tag(to_string(tag)) == tag);
  }
  CHECK_FALSE(parse_density_tag("exactly").has_value());
  CHECK(DensityModel{DensityTag::modulus_exact, 4}.is_modulus());
  CHECK(DensityModel{DensityTag::modulus_exact, 4}.needs_degree());
  CHECK_FALSE(DensityModel{DensityTag::asymptotic, 0}.needs_degree());
  CHECK(DensityModel{DensityTag::modulus_asymptotic, 0}.is_asymptotic());
}

TEST_CASE("density curves") {
  const auto c = density_curve(DensityModel{DensityTag::asymptotic, 0}, {0.0, 2.5, 5.0});
  REQUIRE(c.values.size() == 3);
  CHECK(c.values[0] == doctest::Approx(2.0 / kPi).epsilon(1e-12));
  CHECK(c.values[1] > c.values[2]);
  CHECK_THROWS_AS(density_curve(DensityModel{DensityTag::asymptotic, 0}, {0.0, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(density_curve(DensityModel{DensityTag::asymptotic, 0}, {-1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(density_curve(DensityModel{DensityTag::exact, 1}, {0.0}), std::invalid_argument);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(density_exact(1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(density_exact(5, -0.5), std::invalid_argument);
}
