#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "su2crit/su2poly.hpp"

namespace su2crit {

struct RootOptions {
  int max_iterations = 200;
  int polish_steps = 3;
  /// Bound on |q(z)| / (max_j |q_j| * max(1, |z|)^(m-1)) for an accepted root.
  double residual_tol = 1e-10;
  /// Leading coefficient modulus, relative to the largest one, below which
  /// the polynomial is treated as having lost degree.
  double lead_underflow = 1e-280;
  /// Phase offset of the initial circle of guesses.
  double start_phase = 0.4;
};

enum class RootStatus {
  accepted,
  rejected_nonconvergence,
  rejected_underflow,
  rejected_residual,
  rejected_overflow,
};

std::string_view to_string(RootStatus status);

struct RootResult {
  std::vector<Complex> roots;
  std::vector<double> residuals;
  int iterations = 0;
  RootStatus status = RootStatus::accepted;

  bool accepted() const { return status == RootStatus::accepted; }
};

/// Scaled residual |q(z)| / (max_j |q_j| * max(1, |z|)^(m-1)), evaluated in
/// reversed form for |z| > 1 so it never overflows.
double scaled_residual(std::span<const Complex> coeffs, Complex z);

/// All roots of sum_j coeffs[j] z^j by Aberth-Ehrlich simultaneous
/// iteration from a circle at the Fujiwara root bound, then Newton
/// polishing. Failure is reported through status, never by dropping roots.
RootResult polynomial_roots(std::span<const Complex> coeffs, const RootOptions& opts = {});

struct VietaCheck {
  double sum_rel_err = 0.0;
  double product_rel_err = 0.0;
};

/// Compares sum and product of roots against -q_{m-1}/q_m and
/// (-1)^m q_0/q_m. The sum error is relative to max(|expected|, sum |z_k|).
VietaCheck vieta_check(std::span<const Complex> coeffs, std::span<const Complex> roots);

struct CriticalSet {
  std::vector<Complex> points;
  std::vector<Complex> values;
  std::vector<double> residuals;
  VietaCheck vieta;
  int iterations = 0;
  RootStatus status = RootStatus::accepted;

  bool accepted() const { return status == RootStatus::accepted; }
};

/// Roots of p' together with the critical values p(z_k). Requires n >= 2.
CriticalSet critical_points(const Su2Poly& p, const RootOptions& opts = {});

}  // namespace su2crit
