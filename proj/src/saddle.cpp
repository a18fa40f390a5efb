#include "su2crit/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace su2crit {

namespace {

struct Hessian2 {
  double xx, xy, yy;
};

Hessian2 central_hessian(const Su2Poly& p, Complex z0, double h) {
  auto f = [&](double dx, double dy) { return std::abs(evaluate(p, z0 + Complex{dx, dy})); };
  const double f0 = f(0.0, 0.0);
  const double h2 = h * h;
  return {
      (f(h, 0.0) - 2.0 * f0 + f(-h, 0.0)) / h2,
      (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h2),
      (f(0.0, h) - 2.0 * f0 + f(0.0, -h)) / h2,
  };
}

double coefficient_envelope(const Su2Poly& p, Complex z0) {
  double scale = 0.0;
  for (const auto& c : p.coeffs()) scale = std::max(scale, std::abs(c));
  return scale * std::pow(std::max(1.0, std::abs(z0)), p.degree());
}

}  // namespace

SaddleEstimate classify_saddle(const Su2Poly& p, Complex z0, const SaddleOptions& opts) {
  SaddleEstimate est;
  est.step = opts.step > 0.0 ? opts.step : 1e-4 * std::max(1.0, std::abs(z0));
  if (std::abs(evaluate(p, z0)) <= opts.zero_threshold * coefficient_envelope(p, z0)) {
    est.skipped = true;
    return est;
  }
  Hessian2 h = central_hessian(p, z0, est.step);
  if (opts.richardson) {
    const Hessian2 fine = central_hessian(p, z0, 0.5 * est.step);
    h = {(4.0 * fine.xx - h.xx) / 3.0, (4.0 * fine.xy - h.xy) / 3.0,
         (4.0 * fine.yy - h.yy) / 3.0};
  }
  est.laplacian = h.xx + h.yy;
  est.hessian_det = h.xx * h.yy - h.xy * h.xy;
  est.hessian_norm = std::sqrt(h.xx * h.xx + 2.0 * h.xy * h.xy + h.yy * h.yy);
  return est;
}

double saddle_length_scale(const Su2Poly& p, Complex z0) {
  const double value = std::abs(evaluate(p, z0));
  auto d1 = derivative(p.coeffs()).coeffs;
  auto d2 = derivative(d1).coeffs;
  auto d3 = derivative(d2).coeffs;
  const double second = std::abs(evaluate(d2, z0)) / 2.0;
  const double third = std::abs(evaluate(d3, z0)) / 6.0;
  double scale = std::numeric_limits<double>::infinity();
  if (second > 0.0) scale = std::min(scale, std::sqrt(value / second));
  if (third > 0.0) scale = std::min(scale, std::cbrt(value / third));
  return scale;
}

std::vector<double> laplacian_refinement(const Su2Poly& p, Complex z0, double h, int levels) {
  std::vector<double> out;
  out.reserve(levels);
  for (int k = 0; k < levels; ++k, h *= 0.5) {
    const Hessian2 hs = central_hessian(p, z0, h);
    out.push_back(hs.xx + hs.yy);
  }
  return out;
}

SaddleVerdict judge_saddle(const Su2Poly& p, Complex z0, const SaddleCriteria& criteria,
                           const SaddleOptions& opts) {
  SaddleVerdict v;
  v.estimate = classify_saddle(p, z0, opts);
  if (v.estimate.skipped) {
    v.skipped = true;
    return v;
  }
  const double norm2 = v.estimate.hessian_norm * v.estimate.hessian_norm;
  v.det_nonpositive = v.estimate.hessian_det <= criteria.det_tolerance * norm2;

  const double h0 = criteria.refinement_fraction * saddle_length_scale(p, z0);
  const auto laps = laplacian_refinement(p, z0, h0, 3);
  const double floor = criteria.laplacian_floor * v.estimate.hessian_norm;
  if (std::abs(laps[1]) <= floor && std::abs(laps[2]) <= floor) {
    v.laplacian_converges = true;
    v.observed_order = std::numeric_limits<double>::infinity();
    return v;
  }
  const double order1 = std::log2(std::abs(laps[0] / laps[1]));
  const double order2 = std::log2(std::abs(laps[1] / laps[2]));
  v.observed_order = order2;
  v.laplacian_converges = order1 >= criteria.min_order && order1 <= criteria.max_order &&
                          order2 >= criteria.min_order && order2 <= criteria.max_order;
  return v;
}

}  // namespace su2crit
