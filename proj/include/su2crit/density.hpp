#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace su2crit {

inline constexpr double kDefaultQuadTol = 1e-10;
/// Above this degree density_exact routes through the g/h decomposition.
inline constexpr int kLargeDegreeThreshold = 100;

// Radial profile helpers. t lives on [0, 1] after the substitution t = 1/r
// of the r = 1 + |z|^2 integral; s = t^n.

/// n t^(n-1) - (n-1) t^n, in [0, 1] on [0, 1].
double y_n(double t, int n);
/// -n s^((n-1)/n) + (n-1) s, evaluated as -s (1 + n expm1(-log(s)/n)).
double z_fn(double s, int n);
/// -(s - s log s) with s log s = 0 at s = 0; the n -> infinity limit of z_fn.
double z_limit(double s);

/// Interior breakpoints for t-integrals of exp(-y_n(t) u): a geometric
/// ladder into the O(1/n) layer at t = 1 and a cluster around the point
/// where y_n(t) u ~ 1.
std::vector<double> t_panel_hints(int n, double u);

/// ∫_0^1 exp(-y_n(t) u) dt.
double g_fn(int n, double u, double tol = kDefaultQuadTol);
/// n ∫_0^1 t^(n-1) exp(-y_n(t) u) dt, computed as ∫_0^1 exp(z_fn(s, n) u) ds.
double h_fn(int n, double u, double tol = kDefaultQuadTol);
/// ∫_0^1 exp(-(s - s log s) u) ds.
double h_limit(double u, double tol = kDefaultQuadTol);
/// (g_fn(n, u) - exp(-u)) / u with the integrand written through expm1, so
/// u -> 0 has no cancellation; at u = 0 returns 1 - 2/(n+1).
double g_minus_exp_over_u(int n, double u, double tol = kDefaultQuadTol);

/// ((n-1)/pi) ∫_0^1 y_n(t) exp(-y_n(t) r^2) dt by direct t-quadrature.
double density_direct(int n, double r, double tol = kDefaultQuadTol);
/// ((n-1)/(n pi)) ((g_n(u) - e^{-u})/u + h_n(u)), u = r^2.
double density_via_identity(int n, double r, double tol = kDefaultQuadTol);
/// Expected density of critical values of p_n at |x| = r. Direct for
/// n <= 100, via the g/h decomposition above that.
double density_exact(int n, double r, double tol = kDefaultQuadTol);
/// Density before integration by parts:
/// ((n-1)/pi) ∫_0^1 [(n^2-n) r^2 (1-t)^2 t^(2n-2) + 2 t^n] exp(-y_n(t) r^2) dt.
double density_unsimplified(int n, double r, double tol = kDefaultQuadTol);
/// Large-n limit: (1 - e^{-r^2})/(pi r^2) + h_limit(r^2)/pi.
double density_asymptotic(double r, double tol = kDefaultQuadTol);
/// Large-n limit for |p_n|: 2(1 - e^{-x^2})/x + 2x h_limit(x^2).
double density_modulus_asymptotic(double x, double tol = kDefaultQuadTol);
/// 2 pi x density_exact(n, x).
double density_modulus_exact(int n, double x, double tol = kDefaultQuadTol);

/// |density_direct - ((n-1)/(n pi)) ((g - e^{-u})/u + h)| at r = sqrt(u).
double identity_check_firstestimate(int n, double u, double tol = kDefaultQuadTol);

enum class DensityTag { exact, unsimplified, asymptotic, modulus_exact, modulus_asymptotic };

std::string_view to_string(DensityTag tag);
std::optional<DensityTag> parse_density_tag(std::string_view name);

struct DensityModel {
  DensityTag tag = DensityTag::exact;
  /// Degree; ignored by the asymptotic tags.
  int n = 0;

  bool needs_degree() const {
    return tag == DensityTag::exact || tag == DensityTag::unsimplified ||
           tag == DensityTag::modulus_exact;
  }
  bool is_modulus() const {
    return tag == DensityTag::modulus_exact || tag == DensityTag::modulus_asymptotic;
  }
  bool is_asymptotic() const {
    return tag == DensityTag::asymptotic || tag == DensityTag::modulus_asymptotic;
  }
};

/// The model's own density at r: D(r) on C for complex-plane tags, D_{|p|}
/// on R+ for modulus tags.
double evaluate_model(const DensityModel& model, double r, double tol = kDefaultQuadTol);

/// Density of |x| on [0, inf): 2 pi r D(r) for complex-plane tags, the
/// modulus density itself for modulus tags.
double radial_measure(const DensityModel& model, double r, double tol = kDefaultQuadTol);

/// ∫_a^b radial_measure(model, r) dr, the expected number of critical
/// values per draw with modulus in [a, b).
double bin_expectation(const DensityModel& model, double a, double b,
                       double outer_tol = 1e-9, double inner_tol = kDefaultQuadTol);

struct RadialDensityCurve {
  DensityModel model;
  std::vector<double> radii;
  std::vector<double> values;
  double quad_tol = kDefaultQuadTol;
};

/// Samples the model on an ascending grid. Throws std::invalid_argument if
/// the grid is not strictly ascending or contains negative radii.
RadialDensityCurve density_curve(const DensityModel& model, std::vector<double> radii,
                                 double tol = kDefaultQuadTol);

struct MassStep {
  double radius = 0.0;
  double mass = 0.0;
};

/// 2 pi ∫_0^R r density_exact(n, r) dr for R = r0, 2 r0, 4 r0, ... until a
/// doubling adds less than rel_stop of the accumulated mass.
std::vector<MassStep> mass_truncation_sequence(int n, double r0 = 4.0, double rel_stop = 1e-4,
                                               int max_doublings = 200);

}  // namespace su2crit
