#pragma once

#include <vector>

#include "su2crit/su2poly.hpp"

namespace su2crit {

struct SaddleOptions {
  /// Step h; <= 0 selects 1e-4 * max(1, |z0|).
  double step = 0.0;
  /// Combine steps h and h/2 as (4 H(h/2) - H(h)) / 3.
  bool richardson = true;
  /// |p(z0)| below zero_threshold * max_j |c_j| * max(1, |z0|)^n means z0
  /// is a zero of p, not a nonvanishing critical point.
  double zero_threshold = 1e-12;
};

/// Finite-difference Hessian of |p| as a function of (Re z, Im z).
struct SaddleEstimate {
  double laplacian = 0.0;
  double hessian_det = 0.0;
  /// Frobenius norm of the estimated Hessian.
  double hessian_norm = 0.0;
  double step = 0.0;
  bool skipped = false;
};

SaddleEstimate classify_saddle(const Su2Poly& p, Complex z0, const SaddleOptions& opts = {});

/// Length over which the Taylor expansion of p at z0 stays dominated by p(z0):
/// min_k (|p(z0)| / |p^(k)(z0) / k!|)^(1/k), k = 2, 3.
double saddle_length_scale(const Su2Poly& p, Complex z0);

/// Plain central-difference Laplacians of |p| at h, h/2, ..., h/2^(levels-1).
std::vector<double> laplacian_refinement(const Su2Poly& p, Complex z0, double h, int levels = 3);

struct SaddleVerdict {
  bool skipped = false;
  bool det_nonpositive = false;
  bool laplacian_converges = false;
  double observed_order = 0.0;
  SaddleEstimate estimate;

  bool passed() const { return !skipped && det_nonpositive && laplacian_converges; }
};

/// Thresholds used to judge one critical point.
struct SaddleCriteria {
  /// det H <= det_tolerance * |H|_F^2.
  double det_tolerance = 1e-6;
  /// The refinement sequence starts at h = refinement_fraction * length scale.
  double refinement_fraction = 0.05;
  /// Accepted range of log2(L(h) / L(h/2)).
  double min_order = 1.5;
  double max_order = 2.5;
  /// |L| / |H|_F below which the Laplacian is already at rounding level.
  double laplacian_floor = 1e-9;
};

SaddleVerdict judge_saddle(const Su2Poly& p, Complex z0, const SaddleCriteria& criteria = {},
                           const SaddleOptions& opts = {});

}  // namespace su2crit
