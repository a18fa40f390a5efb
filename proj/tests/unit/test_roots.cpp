#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "su2crit/roots.hpp"

using namespace su2crit;

namespace {

// Greedy matching distance between two root multisets.
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const Complex& x : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](const Complex& u, const Complex& v) { return std::abs(u - x) < std::abs(v - x); });
    worst = std::max(worst, std::abs(*it - x) / std::max(1.0, std::abs(x)));
    b.erase(it);
  }
  return worst;
}

}  // namespace

TEST_CASE("critical point of z^2 + c") {
  const Su2Poly p(Coefficients{{0.3, -0.1}, {0, 0}, {1, 0}});
  const CriticalSet cs = critical_points(p);
  REQUIRE(cs.accepted());
  REQUIRE(cs.points.size() == 1);
  CHECK(std::abs(cs.points[0]) < 1e-14);
  CHECK(std::abs(cs.values[0] - Complex{0.3, -0.1}) < 1e-14);
}

TEST_CASE("antiderivative of (z-1)(z-2)") {
  const Su2Poly p(Coefficients{{0, 0}, {2, 0}, {-1.5, 0}, {1.0 / 3.0, 0}});
  const CriticalSet cs = critical_points(p);
  REQUIRE(cs.accepted());
  REQUIRE(cs.points.size() == 2);
  CHECK(multiset_distance(cs.points, {Complex{1, 0}, Complex{2, 0}}) < 1e-12);
  for (std::size_t k = 0; k < 2; ++k) CHECK(cs.values[k] == evaluate(p, cs.points[k]));
}

TEST_CASE("critical points need degree two") {
  CHECK_THROWS_AS(critical_points(Su2Poly(Coefficients{{1, 0}, {2, 0}})), std::invalid_argument);
}

TEST_CASE("random n=40 Vieta relations and residuals") {
  for (std::uint64_t t = 0; t < 20; ++t) {
    const Su2Poly p = sample_su2(40, SeedPath{40, t});
    const CriticalSet cs = critical_points(p);
    REQUIRE(cs.accepted());
    REQUIRE(cs.points.size() == 39);
    const auto d = derivative(p.coeffs()).coeffs;
    Complex sum{0, 0};
    for (const Complex& z : cs.points) sum += z;
    const Complex expected = -d[38] / d[39];
    CHECK(std::abs(sum - expected) <= 1e-6 * std::max(1.0, std::abs(expected)));
    CHECK(cs.vieta.sum_rel_err <= 1e-6);
    CHECK(cs.vieta.product_rel_err <= 1e-6);
    for (double r : cs.residuals) CHECK(r <= 1e-10);
    for (std::size_t k = 0; k < cs.points.size(); ++k) CHECK(cs.values[k] == evaluate(p, cs.points[k]));
  }
}

TEST_CASE("Vieta holds up to n=60") {
  for (int n : {2, 3, 10, 30, 60}) {
    for (std::uint64_t t = 0; t < 10; ++t) {
      const CriticalSet cs = critical_points(sample_su2(n, SeedPath{60, t}));
      REQUIRE(cs.accepted());
      CHECK(cs.points.size() == static_cast<std::size_t>(n - 1));
      CHECK(cs.vieta.sum_rel_err <= 1e-6);
      CHECK(cs.vieta.product_rel_err <= 1e-6);
    }
  }
}

TEST_CASE("roots are invariant under coefficient rescaling") {
  const Su2Poly p = sample_su2(25, SeedPath{77, 1});
  const CriticalSet base = critical_points(p);
  REQUIRE(base.accepted());
  for (Complex factor : {Complex{1e-150, 0}, Complex{0, 3.0}, Complex{1e120, -1e120}}) {
    const CriticalSet cs = critical_points(p.scaled(factor));
    REQUIRE(cs.accepted());
    CHECK(multiset_distance(cs.points, base.points) < 1e-8);
  }
}

TEST_CASE("polynomial_roots of known factorization") {
  // (z - 0.5)(z + 2i)(z - 3) expanded
  const Complex r1{0.5, 0}, r2{0, -2}, r3{3, 0};
  const Coefficients c{-r1 * r2 * r3, r1 * r2 + r1 * r3 + r2 * r3, -(r1 + r2 + r3), {1, 0}};
  const RootResult res = polynomial_roots(c);
  REQUIRE(res.accepted());
  CHECK(multiset_distance(res.roots, {r1, r2, r3}) < 1e-13);
}

TEST_CASE("leading coefficient underflow is rejected") {
  const Coefficients c{{1, 0}, {2, 0}, {1e-300, 0}};
  const RootResult res = polynomial_roots(c);
  CHECK(res.status == RootStatus::rejected_underflow);
  CHECK(to_string(res.status) == "rejected_underflow");
}

TEST_CASE("iteration cap produces a rejection, not dropped roots") {
  RootOptions opts;
  opts.max_iterations = 1;
  const RootResult res = polynomial_roots(sample_su2(30, SeedPath{3, 3}).coeffs(), opts);
  CHECK(res.status == RootStatus::rejected_nonconvergence);
}

TEST_CASE("scaled residual is bounded at large modulus") {
  const Coefficients c{{1, 0}, {1, 0}, {1, 0}};
  CHECK(scaled_residual(c, Complex{0, 0}) == doctest::Approx(1.0));
  CHECK(std::isfinite(scaled_residual(c, Complex{1e200, 0})));
  // normalized by max(1, |z|)^(m-1), so a non-root grows like |z|
  CHECK(scaled_residual(c, Complex{1e200, 0}) == doctest::Approx(1e200).epsilon(1e-12));
}

TEST_CASE("degree one root") {
  const RootResult res = polynomial_roots(Coefficients{{2, 0}, {-4, 0}});
  REQUIRE(res.accepted());
  REQUIRE(res.roots.size() == 1);
  CHECK(std::abs(res.roots[0] - Complex{0.5, 0}) < 1e-15);
}

TEST_CASE("rotation leaves critical value moduli unchanged") {
  const Su2Poly p = sample_su2(15, SeedPath{15, 2});
  const double phase = 0.9;
  Coefficients rotated(p.coeffs().begin(), p.coeffs().end());
  for (std::size_t j = 0; j < rotated.size(); ++j) rotated[j] *= std::polar(1.0, phase * j);
  const CriticalSet a = critical_points(p);
  const CriticalSet b = critical_points(Su2Poly(rotated));
  REQUIRE(a.accepted());
  REQUIRE(b.accepted());
  std::vector<double> ma, mb;
  for (const auto& v : a.values) ma.push_back(std::abs(v));
  for (const auto& v : b.values) mb.push_back(std::abs(v));
  std::sort(ma.begin(), ma.end());
  std::sort(mb.begin(), mb.end());
  for (std::size_t k = 0; k < ma.size(); ++k) CHECK(mb[k] == doctest::Approx(ma[k]).epsilon(1e-9));
}
