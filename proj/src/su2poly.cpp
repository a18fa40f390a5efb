#include "su2crit/su2poly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "su2crit/errors.hpp"

namespace su2crit {

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

Su2Poly::Su2Poly(Coefficients monomial) : coeffs_(std::move(monomial)) {
  if (coeffs_.empty()) throw std::invalid_argument("Su2Poly: empty coefficient array");
  for (const auto& c : coeffs_) {
    if (!finite(c)) throw std::invalid_argument("Su2Poly: non-finite coefficient");
  }
}

Su2Poly Su2Poly::from_gaussians(std::span<const Complex> gaussians) {
  if (gaussians.empty()) throw std::invalid_argument("Su2Poly: empty coefficient array");
  const int n = static_cast<int>(gaussians.size()) - 1;
  Coefficients c(gaussians.size());
  for (int j = 0; j <= n; ++j) c[j] = gaussians[j] * sqrt_binomial(n, j);
  return Su2Poly(std::move(c));
}

Su2Poly Su2Poly::scaled(Complex factor) const {
  Coefficients c(coeffs_);
  for (auto& x : c) x *= factor;
  return Su2Poly(std::move(c));
}

double sqrt_binomial(int n, int j) {
  if (j < 0 || j > n) return 0.0;
  const int k = std::min(j, n - j);
  double binom = 1.0;
  for (int i = 1; i <= k; ++i) binom = binom * static_cast<double>(n - k + i) / i;
  return std::sqrt(binom);
}

Su2Poly sample_su2(int n, SeedPath seed) {
  if (n < 0) throw std::invalid_argument("sample_su2: negative degree");
  PhiloxStream stream(seed);
  Coefficients a(static_cast<std::size_t>(n) + 1);
  for (auto& x : a) x = stream.complex_normal();
  return Su2Poly::from_gaussians(a);
}

Complex evaluate(std::span<const Complex> coeffs, Complex z) {
  Complex acc{0.0, 0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * z + *it;
    if (!finite(acc) && finite(z)) {
      throw OverflowError("evaluate: intermediate overflow at |z| = " +
                          std::to_string(std::abs(z)));
    }
  }
  return acc;
}

Derivatives evaluate_derivs(std::span<const Complex> coeffs, Complex z) {
  Complex p{0.0, 0.0}, dp{0.0, 0.0}, ddp{0.0, 0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    ddp = ddp * z + dp;
    dp = dp * z + p;
    p = p * z + *it;
  }
  if (finite(z) && !(finite(p) && finite(dp) && finite(ddp))) {
    throw OverflowError("evaluate_derivs: intermediate overflow at |z| = " +
                        std::to_string(std::abs(z)));
  }
  // the recurrence accumulates p''/2
  return {p, dp, 2.0 * ddp};
}

DerivativeResult derivative(std::span<const Complex> coeffs) {
  if (coeffs.size() <= 1) return {Coefficients{Complex{0.0, 0.0}}, true};
  Coefficients out(coeffs.size() - 1);
  for (std::size_t j = 0; j + 1 < coeffs.size(); ++j) {
    out[j] = static_cast<double>(j + 1) * coeffs[j + 1];
  }
  return {std::move(out), false};
}

}  // namespace su2crit
