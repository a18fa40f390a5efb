#include "su2crit/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "su2crit/errors.hpp"

namespace su2crit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

// Value, derivative and rounding bound of a polynomial at z, all scaled so
// that nothing overflows for large |z|: for |z| > 1 the reversed polynomial
// R(w) = w^m q(1/w) is used and the returned Newton ratio is still q/q'.
struct LocalEval {
  Complex newton_ratio;  // q(z) / q'(z)
  double magnitude;      // |q(z)| in the scaled frame
  double bound;          // sum |q_j| |z|^j in the same frame
  bool derivative_vanished;
};

LocalEval local_eval(std::span<const Complex> a, Complex z) {
  const int m = static_cast<int>(a.size()) - 1;
  Complex v{0.0, 0.0}, dv{0.0, 0.0};
  double bound = 0.0;
  if (std::abs(z) <= 1.0) {
    const double az = std::abs(z);
    for (int j = m; j >= 0; --j) {
      dv = dv * z + v;
      v = v * z + a[j];
      bound = bound * az + std::abs(a[j]);
    }
    const bool vanished = dv == Complex{0.0, 0.0};
    return {vanished ? Complex{0.0, 0.0} : v / dv, std::abs(v), bound, vanished};
  }
  const Complex w = 1.0 / z;
  const double aw = std::abs(w);
  for (int j = 0; j <= m; ++j) {
    dv = dv * w + v;
    v = v * w + a[j];
    bound = bound * aw + std::abs(a[j]);
  }
  // q(z) = z^m R(w), q'(z) = z^(m-1) (m R(w) - w R'(w))
  const Complex denom = static_cast<double>(m) * v - w * dv;
  const bool vanished = denom == Complex{0.0, 0.0};
  return {vanished ? Complex{0.0, 0.0} : z * v / denom, std::abs(v), bound, vanished};
}

double fujiwara_bound(std::span<const Complex> a) {
  const int m = static_cast<int>(a.size()) - 1;
  const double lead = std::abs(a[m]);
  double best = 0.0;
  for (int j = 0; j < m; ++j) {
    double ratio = std::abs(a[j]) / lead;
    if (j == 0) ratio *= 0.5;
    if (ratio == 0.0) continue;
    best = std::max(best, std::pow(ratio, 1.0 / (m - j)));
  }
  return 2.0 * best;
}

}  // namespace

std::string_view to_string(RootStatus status) {
  switch (status) {
    case RootStatus::accepted: return "accepted";
    case RootStatus::rejected_nonconvergence: return "rejected_nonconvergence";
    case RootStatus::rejected_underflow: return "rejected_underflow";
    case RootStatus::rejected_residual: return "rejected_residual";
    case RootStatus::rejected_overflow: return "rejected_overflow";
  }
  return "unknown";
}

double scaled_residual(std::span<const Complex> coeffs, Complex z) {
  const int m = static_cast<int>(coeffs.size()) - 1;
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  if (std::abs(z) <= 1.0) {
    Complex v{0.0, 0.0};
    for (int j = m; j >= 0; --j) v = v * z + coeffs[j] / scale;
    return std::abs(v);
  }
  const Complex w = 1.0 / z;
  Complex v{0.0, 0.0};
  for (int j = 0; j <= m; ++j) v = v * w + coeffs[j] / scale;
  // |q(z)| / |z|^(m-1) = |z| |R(w)|
  return std::abs(z) * std::abs(v);
}

RootResult polynomial_roots(std::span<const Complex> coeffs, const RootOptions& opts) {
  RootResult result;
  const int m = static_cast<int>(coeffs.size()) - 1;
  if (m < 1) return result;

  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0 || !std::isfinite(scale)) {
    result.status = RootStatus::rejected_underflow;
    return result;
  }
  std::vector<Complex> a(coeffs.begin(), coeffs.end());
  for (auto& c : a) c /= scale;
  if (std::abs(a[m]) < opts.lead_underflow) {
    result.status = RootStatus::rejected_underflow;
    return result;
  }

  auto& z = result.roots;
  z.resize(m);
  if (m == 1) {
    z[0] = -a[0] / a[1];
  } else {
    double radius = fujiwara_bound(a);
    if (radius == 0.0) radius = 1.0;  // q = c z^m
    for (int k = 0; k < m; ++k) {
      const double phase = 2.0 * std::numbers::pi * k / m + opts.start_phase;
      z[k] = std::polar(radius, phase);
    }

    std::vector<bool> done(m, false);
    int remaining = m;
    int iter = 0;
    for (; iter < opts.max_iterations && remaining > 0; ++iter) {
      for (int k = 0; k < m; ++k) {
        if (done[k]) continue;
        const LocalEval e = local_eval(a, z[k]);
        if (e.magnitude <= 8.0 * kEps * e.bound) {
          done[k] = true;
          --remaining;
          continue;
        }
        Complex repulsion{0.0, 0.0};
        for (int j = 0; j < m; ++j) {
          if (j != k) repulsion += 1.0 / (z[k] - z[j]);
        }
        Complex step;
        if (e.derivative_vanished) {
          step = Complex{1e-3, 1e-3} * std::max(1.0, std::abs(z[k]));
        } else {
          const Complex denom = 1.0 - e.newton_ratio * repulsion;
          step = denom == Complex{0.0, 0.0} ? e.newton_ratio : e.newton_ratio / denom;
        }
        z[k] -= step;
        if (!finite(z[k])) {
          result.status = RootStatus::rejected_nonconvergence;
          result.iterations = iter + 1;
          return result;
        }
      }
    }
    result.iterations = iter;
    if (remaining > 0) {
      result.status = RootStatus::rejected_nonconvergence;
      return result;
    }
  }

  result.residuals.resize(m);
  for (int k = 0; k < m; ++k) {
    double best = scaled_residual(a, z[k]);
    for (int s = 0; s < opts.polish_steps; ++s) {
      const LocalEval e = local_eval(a, z[k]);
      if (e.derivative_vanished) break;
      const Complex candidate = z[k] - e.newton_ratio;
      const double r = scaled_residual(a, candidate);
      if (!(r < best)) break;
      z[k] = candidate;
      best = r;
    }
    result.residuals[k] = best;
    if (!(best <= opts.residual_tol)) result.status = RootStatus::rejected_residual;
  }
  return result;
}

VietaCheck vieta_check(std::span<const Complex> coeffs, std::span<const Complex> roots) {
  VietaCheck check;
  const int m = static_cast<int>(coeffs.size()) - 1;
  if (m < 1 || static_cast<int>(roots.size()) != m) {
    check.sum_rel_err = check.product_rel_err = std::numeric_limits<double>::infinity();
    return check;
  }
  const Complex lead = coeffs[m];

  Complex sum{0.0, 0.0};
  double abs_sum = 0.0;
  for (const auto& r : roots) {
    sum += r;
    abs_sum += std::abs(r);
  }
  const Complex expected_sum = -coeffs[m - 1] / lead;
  const double sum_scale = std::max(std::abs(expected_sum), abs_sum);
  check.sum_rel_err = sum_scale > 0.0 ? std::abs(sum - expected_sum) / sum_scale : 0.0;

  // product via summed logarithms so wide root spreads cannot overflow
  const Complex expected_product = (m % 2 == 0 ? 1.0 : -1.0) * coeffs[0] / lead;
  bool has_zero_root = false;
  Complex log_sum{0.0, 0.0};
  for (const auto& r : roots) {
    if (r == Complex{0.0, 0.0}) {
      has_zero_root = true;
      break;
    }
    log_sum += std::log(r);
  }
  if (expected_product == Complex{0.0, 0.0} || has_zero_root) {
    Complex prod{1.0, 0.0};
    for (const auto& r : roots) prod *= r;
    check.product_rel_err = std::abs(prod - expected_product);
  } else {
    Complex diff = log_sum - std::log(expected_product);
    const double two_pi = 2.0 * std::numbers::pi;
    diff.imag(diff.imag() - two_pi * std::round(diff.imag() / two_pi));
    check.product_rel_err = std::abs(std::exp(diff) - 1.0);
  }
  return check;
}

CriticalSet critical_points(const Su2Poly& p, const RootOptions& opts) {
  if (p.degree() < 2) throw std::invalid_argument("critical_points: degree must be >= 2");
  const auto dp = derivative(p.coeffs()).coeffs;

  CriticalSet set;
  RootResult roots = polynomial_roots(dp, opts);
  set.status = roots.status;
  set.iterations = roots.iterations;
  set.points = std::move(roots.roots);
  set.residuals = std::move(roots.residuals);
  if (!set.accepted()) return set;

  set.vieta = vieta_check(dp, set.points);
  set.values.reserve(set.points.size());
  try {
    for (const auto& z : set.points) set.values.push_back(evaluate(p, z));
  } catch (const OverflowError&) {
    set.status = RootStatus::rejected_overflow;
    set.values.clear();
  }
  return set;
}

}  // namespace su2crit
