#pragma once

#include <complex>
#include <span>
#include <vector>

#include "su2crit/rng.hpp"

namespace su2crit {

using Complex = std::complex<double>;
using Coefficients = std::vector<Complex>;

/// Polynomial sum_j coeffs[j] z^j of degree n = coeffs.size() - 1. For a
/// sampled SU(2) polynomial coeffs[j] = a_j * sqrt(C(n, j)).
class Su2Poly {
 public:
  Su2Poly() : coeffs_(1, Complex{0.0, 0.0}) {}

  /// Takes monomial coefficients as-is. Throws std::invalid_argument when
  /// empty or non-finite.
  explicit Su2Poly(Coefficients monomial);

  /// Applies the sqrt(C(n, j)) weights to unit-variance Gaussians a_j.
  static Su2Poly from_gaussians(std::span<const Complex> gaussians);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  const Complex& operator[](std::size_t j) const { return coeffs_[j]; }

  Su2Poly scaled(Complex factor) const;

 private:
  Coefficients coeffs_;
};

/// sqrt(C(n, j)); C(n, j) is built multiplicatively so it is exact while it
/// fits in 53 bits.
double sqrt_binomial(int n, int j);

/// Draw from the ensemble: a_j i.i.d. standard complex Gaussian, one
/// counter-based substream per SeedPath.
Su2Poly sample_su2(int n, SeedPath seed);

/// Horner evaluation. Throws OverflowError when a finite z produces a
/// non-finite intermediate.
Complex evaluate(std::span<const Complex> coeffs, Complex z);
inline Complex evaluate(const Su2Poly& p, Complex z) { return evaluate(p.coeffs(), z); }

struct Derivatives {
  Complex value;
  Complex first;
  Complex second;
};

/// (p, p', p'') at z by a three-term Horner recurrence.
Derivatives evaluate_derivs(std::span<const Complex> coeffs, Complex z);
inline Derivatives evaluate_derivs(const Su2Poly& p, Complex z) {
  return evaluate_derivs(p.coeffs(), z);
}

struct DerivativeResult {
  Coefficients coeffs;
  /// Set when the input was constant, so the output is the zero polynomial
  /// by definition rather than by formal differentiation.
  bool defined_as_zero = false;
};

/// output[j] = (j + 1) coeffs[j + 1].
DerivativeResult derivative(std::span<const Complex> coeffs);

}  // namespace su2crit
