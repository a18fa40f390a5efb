#include "su2crit/kacrice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "su2crit/errors.hpp"
#include "su2crit/quadrature.hpp"

namespace su2crit {

namespace {

void require_degree(int n, const char* who) {
  if (n < 2) throw std::invalid_argument(std::string(who) + ": degree must be >= 2");
}

Complex int_pow(Complex base, int n) {
  Complex result{1.0, 0.0};
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

}  // namespace

Complex covariance_kernel(int n, Complex z, Complex w) {
  if (n < 0) throw std::invalid_argument("covariance_kernel: negative degree");
  const Complex base = 1.0 + z * std::conj(w);
  const double log_mod = std::log(std::abs(base));
  if (std::abs(n * log_mod) < 600.0) return int_pow(base, n);
  return std::exp(static_cast<double>(n) * std::log(base));
}

double CovarianceMatrix3::normalized_determinant() const {
  const auto& m = normalized;
  const Complex det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                      m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                      m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return det.real();
}

CovarianceMatrix3 covariance_matrix(int n, Complex z) {
  require_degree(n, "covariance_matrix");
  const double nn = n;
  const double r2 = std::norm(z);
  const double a = 1.0 + r2;
  const Complex zb = std::conj(z);

  CovarianceMatrix3 cov;
  cov.n = n;
  cov.z = z;
  cov.log_prefactor = nn * std::log1p(r2);
  auto& m = cov.normalized;
  m[0][0] = 1.0;
  m[0][1] = nn * zb / a;
  m[0][2] = nn * (nn - 1.0) * zb * zb / (a * a);
  m[1][1] = (nn + nn * nn * r2) / (a * a);
  m[1][2] = (2.0 * nn * (nn - 1.0) * zb + (nn - 1.0) * nn * nn * zb * r2) / (a * a * a);
  m[2][2] = (2.0 * nn * (nn - 1.0) + 4.0 * nn * (nn - 1.0) * (nn - 1.0) * r2 +
             nn * nn * (nn - 1.0) * (nn - 1.0) * r2 * r2) /
            (a * a * a * a);
  m[1][0] = std::conj(m[0][1]);
  m[2][0] = std::conj(m[0][2]);
  m[2][1] = std::conj(m[1][2]);
  return cov;
}

double log_det_delta(int n, Complex z) {
  require_degree(n, "det_delta");
  const double nn = n;
  return (3.0 * nn - 6.0) * std::log1p(std::norm(z)) + std::log(2.0 * nn * nn * (nn - 1.0));
}

double det_delta(int n, Complex z) { return std::exp(log_det_delta(n, z)); }

double q_form(int n, Complex z, Complex x, Complex xi) {
  require_degree(n, "q_form");
  const double nn = n;
  const double r2 = std::norm(z);
  const double a = 1.0 + r2;
  const double root = std::sqrt(nn * nn - nn);
  const Complex zb = std::conj(z);
  const Complex shifted = root * zb * zb * x + xi * (a * a) / root;
  const double inv_prefactor = std::exp(-nn * std::log1p(r2));
  return 0.5 * inv_prefactor * (std::norm(shifted) + 2.0 * (nn * r2 + 1.0) * std::norm(x));
}

double k_z(int n, Complex z, Complex x) {
  require_degree(n, "k_z");
  const double nn = n;
  const double m = nn * nn - nn;
  const double r2 = std::norm(z);
  const double log_a = std::log1p(r2);
  // pi m^2 a^(2n-8) [2 m |x|^2 |z|^4 a^(-n) + 4]
  const double bracket = 2.0 * m * std::norm(x) * r2 * r2 * std::exp(-nn * log_a) + 4.0;
  return std::numbers::pi * m * m * std::exp((2.0 * nn - 8.0) * log_a) * bracket;
}

KzNumeric k_z_numeric(int n, Complex z, Complex x, double cutoff) {
  require_degree(n, "k_z_numeric");
  const double nn = n;
  const double root = std::sqrt(nn * nn - nn);
  const double a = 1.0 + std::norm(z);
  const Complex zb = std::conj(z);
  const Complex shift = root * zb * zb * x;
  const double scale = a * a / root;
  const double var2 = 2.0 * std::exp(nn * std::log(a));
  // Gaussian part: |shift + xi * scale|^2 / var2, centered at -shift / scale
  const Complex center = -shift / scale;

  auto ring = [&](double rho) {
    QuadratureProblem inner;
    inner.integrand = [&, rho](double theta) { return std::norm(center + std::polar(rho, theta)); };
    inner.lower = 0.0;
    inner.upper = 2.0 * std::numbers::pi;
    inner.rel_tol = 1e-12;
    inner.breakpoints = {0.5 * std::numbers::pi, std::numbers::pi, 1.5 * std::numbers::pi};
    const double angular = integrate_checked(inner, "k_z_numeric angular");
    return angular * std::exp(-rho * rho * scale * scale / var2) * rho;
  };

  auto radial = [&](double lo, double hi) {
    QuadratureProblem outer;
    outer.integrand = ring;
    outer.lower = lo;
    outer.upper = hi;
    outer.rel_tol = 1e-10;
    outer.abs_tol = 1e-300;
    const double sigma = std::sqrt(var2 / 2.0) / scale;
    for (double k = 1.0; k * sigma < hi; k += 1.0) outer.breakpoints.push_back(k * sigma);
    return integrate(outer);
  };

  KzNumeric out;
  out.cutoff = cutoff;
  const QuadratureResult body = radial(0.0, cutoff);
  if (!body.converged) {
    throw QuadratureError("k_z_numeric: radial quadrature failed", body.value, body.error);
  }
  const QuadratureResult tail = radial(cutoff, 2.0 * cutoff);
  out.value = body.value;
  out.quadrature_error = body.error;
  out.truncation_estimate = std::abs(tail.value);
  if (out.truncation_estimate > 1e-6 * std::abs(out.value)) {
    throw QuadratureError("k_z_numeric: cutoff too small for 1e-6 truncation", out.value,
                          out.truncation_estimate);
  }
  return out;
}

KzNumeric k_z_numeric(int n, Complex z, Complex x) {
  require_degree(n, "k_z_numeric");
  const double nn = n;
  const double a = 1.0 + std::norm(z);
  const double sigma = std::sqrt(std::exp(nn * std::log(a))) * std::sqrt(nn * nn - nn) / (a * a);
  return k_z_numeric(n, z, x, 10.0 * sigma);
}

}  // namespace su2crit
