#pragma once

#include <array>

#include "su2crit/su2poly.hpp"

// Independent numerical routes used to cross-check the closed forms. None
// of these call into kacrice or density.
namespace su2crit::oracle {

using Matrix3 = std::array<std::array<Complex, 3>, 3>;

/// LU with partial pivoting.
Complex determinant(const Matrix3& m);
/// Gauss-Jordan with partial pivoting.
Matrix3 inverse(const Matrix3& m);

/// E[v_j conj(v_i)], v = (p, p', p''), as ∂_z^j ∂_ω^i (1 + z ω)^n at ω = z̄,
/// each derivative by a 5-point 4th-order central stencil of step h.
Complex covariance_entry_fd(int n, Complex z, int i, int j, double h);
Matrix3 covariance_fd(int n, Complex z, double h);

/// The covariance matrix spelled out from its displayed entries including
/// the (1 + |z|^2)^n prefactor.
Matrix3 covariance_direct(int n, Complex z);

/// Σ_ij v_i (Δ^{-1})_ij conj(v_j), v = (x, 0, xi), by numeric inversion.
double quadratic_form_by_inverse(int n, Complex z, Complex x, Complex xi);

/// The pre-integration-by-parts density as the original integral over
/// ρ = 1 + |z|^2 ∈ [1, ∞), mapped by ρ = 1 + (v / (1 - v))^2.
double density_unsimplified_rho(int n, double r, double tol);

}  // namespace su2crit::oracle
