#pragma once

#include <array>

#include "su2crit/su2poly.hpp"

namespace su2crit {

/// E[p(z) conj(p(w))] = (1 + z conj(w))^n. Integer powers by squaring while
/// the result stays in range, log-domain exponentiation otherwise.
Complex covariance_kernel(int n, Complex z, Complex w);

/// Covariance of v = (p, p', p'') at z, stored as (1 + |z|^2)^n times a
/// normalized matrix so large degrees never overflow.
///
/// entry(i, j) = E[v_j conj(v_i)]: row 0 is (E p p̄, E p' p̄, E p'' p̄). The
/// matrix is Hermitian and positive definite for every finite z.
struct CovarianceMatrix3 {
  int n = 0;
  Complex z{};
  double log_prefactor = 0.0;
  std::array<std::array<Complex, 3>, 3> normalized{};

  Complex entry(int i, int j) const { return std::exp(log_prefactor) * normalized[i][j]; }
  /// Numeric determinant of the normalized matrix (cofactor expansion).
  double normalized_determinant() const;
};

CovarianceMatrix3 covariance_matrix(int n, Complex z);

/// det of the covariance matrix in closed form,
/// (1 + |z|^2)^(3n - 6) (2n^3 - 2n^2).
double det_delta(int n, Complex z);
double log_det_delta(int n, Complex z);

/// Quadratic form <(x, 0, xi), Delta^{-1} (x̄, 0, ξ̄)> in the completed-square
/// form
/// (|sqrt(n^2-n) z̄^2 x + xi (1+|z|^2)^2 / sqrt(n^2-n)|^2 + 2(n|z|^2+1)|x|^2)
///   / (2 (1+|z|^2)^n).
double q_form(int n, Complex z, Complex x, Complex xi);

/// ∫_C |xi|^2 exp(-(Gaussian part of q_form)) dℓ_xi in closed form:
/// pi (n^2-n)^2 / (1+|z|^2)^8 [2 (1+|z|^2)^n (n^2-n) |x|^2 |z|^4 + 4 (1+|z|^2)^(2n)].
double k_z(int n, Complex z, Complex x);

struct KzNumeric {
  double value = 0.0;
  double quadrature_error = 0.0;
  /// Mass of the integrand between cutoff and 2 * cutoff.
  double truncation_estimate = 0.0;
  double cutoff = 0.0;
};

/// The same integral by nested adaptive quadrature in polar coordinates
/// around the Gaussian's center, truncated to a disc of radius `cutoff`.
/// Throws QuadratureError when the truncation estimate exceeds 1e-6 of the
/// value, or a panel fails to converge.
KzNumeric k_z_numeric(int n, Complex z, Complex x, double cutoff);
/// Cutoff at 10 standard deviations of the Gaussian.
KzNumeric k_z_numeric(int n, Complex z, Complex x);

}  // namespace su2crit
