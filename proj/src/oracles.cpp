#include "su2crit/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "su2crit/quadrature.hpp"

namespace su2crit::oracle {

Complex determinant(const Matrix3& m) {
  Matrix3 a = m;
  Complex det{1.0, 0.0};
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == Complex{0.0, 0.0}) return {0.0, 0.0};
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < 3; ++r) {
      const Complex f = a[r][col] / a[col][col];
      for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

Matrix3 inverse(const Matrix3& m) {
  Matrix3 a = m;
  Matrix3 inv{};
  for (int i = 0; i < 3; ++i) inv[i][i] = 1.0;
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == Complex{0.0, 0.0}) throw std::domain_error("oracle::inverse: singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Complex d = a[col][col];
    for (int c = 0; c < 3; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const Complex f = a[r][col];
      for (int c = 0; c < 3; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

namespace {

// 5-point stencils at offsets -2h..2h for derivative orders 0, 1, 2
constexpr double kStencil[3][5] = {
    {0.0, 0.0, 1.0, 0.0, 0.0},
    {1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0},
    {-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0},
};

}  // namespace

Complex covariance_entry_fd(int n, Complex z, int i, int j, double h) {
  const Complex omega = std::conj(z);
  auto kernel = [n](Complex zz, Complex ww) { return std::pow(1.0 + zz * ww, n); };
  Complex acc{0.0, 0.0};
  for (int a = 0; a < 5; ++a) {
    if (kStencil[j][a] == 0.0) continue;
    for (int b = 0; b < 5; ++b) {
      if (kStencil[i][b] == 0.0) continue;
      acc += kStencil[j][a] * kStencil[i][b] * kernel(z + (a - 2) * h, omega + (b - 2) * h);
    }
  }
  return acc / std::pow(h, i + j);
}

Matrix3 covariance_fd(int n, Complex z, double h) {
  Matrix3 m{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = covariance_entry_fd(n, z, i, j, h);
  }
  return m;
}

Matrix3 covariance_direct(int n, Complex z) {
  const double nn = n;
  const double r2 = std::norm(z);
  const double a = 1.0 + r2;
  const Complex zb = std::conj(z);
  const double pre = std::pow(a, nn);
  Matrix3 m{};
  m[0][0] = pre;
  m[0][1] = pre * nn * zb / a;
  m[0][2] = pre * nn * (nn - 1) * zb * zb / std::pow(a, 2);
  m[1][0] = pre * nn * z / a;
  m[1][1] = pre * (nn + nn * nn * r2) / std::pow(a, 2);
  m[1][2] = pre * (2 * nn * (nn - 1) * zb + (nn - 1) * nn * nn * zb * r2) / std::pow(a, 3);
  m[2][0] = pre * nn * (nn - 1) * z * z / std::pow(a, 2);
  m[2][1] = pre * (2 * nn * (nn - 1) * z + (nn - 1) * nn * nn * z * r2) / std::pow(a, 3);
  m[2][2] = pre *
            (2 * nn * (nn - 1) + 4 * nn * (nn - 1) * (nn - 1) * r2 +
             nn * nn * (nn - 1) * (nn - 1) * r2 * r2) /
            std::pow(a, 4);
  return m;
}

double quadratic_form_by_inverse(int n, Complex z, Complex x, Complex xi) {
  const Matrix3 inv = inverse(covariance_direct(n, z));
  const std::array<Complex, 3> v{x, Complex{0.0, 0.0}, xi};
  Complex q{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) q += v[i] * inv[i][j] * std::conj(v[j]);
  }
  return q.real();
}

double density_unsimplified_rho(int n, double r, double tol) {
  const double u = r * r;
  const double nn = n;
  QuadratureProblem q;
  q.integrand = [nn, u](double v) {
    if (v >= 1.0) return 0.0;
    const double w = v / (1.0 - v);
    const double rho = 1.0 + w * w;
    const double jac = 2.0 * v / std::pow(1.0 - v, 3);
    const double first = (nn * nn - nn) * u * (rho - 1.0) * (rho - 1.0) * std::pow(rho, -2.0 * nn - 2.0);
    const double second = 2.0 * std::pow(rho, -nn - 2.0);
    const double expo = (nn * (rho - 1.0) + 1.0) * std::pow(rho, -nn) * u;
    return (first + second) * std::exp(-expo) * jac;
  };
  q.lower = 0.0;
  q.upper = 1.0;
  q.rel_tol = tol;
  q.breakpoints = geometric_panels(0.0, 1.0, 0.5, 12);
  return (nn - 1.0) / std::numbers::pi * integrate_checked(q, "density_unsimplified_rho");
}

}  // namespace su2crit::oracle
