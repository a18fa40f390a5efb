#include "su2crit/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "su2crit/quadrature.hpp"

namespace su2crit {

namespace {

constexpr double kPi = std::numbers::pi;

void require_degree(int n, const char* who) {
  if (n < 2) throw std::invalid_argument(std::string(who) + ": degree must be >= 2");
}

void require_nonnegative(double r, const char* who) {
  if (!(r >= 0.0)) throw std::invalid_argument(std::string(who) + ": radius must be >= 0");
}

// Breakpoints toward s = 0 for s-integrals of exp(z(s) u): the integrand
// decays over s ~ 1/u there.
std::vector<double> s_panel_hints(double u) {
  auto pts = geometric_panels(1.0, 0.0, 0.5, 24);
  if (u > 1.0) {
    for (double f : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const double s = f / u;
      if (s > 0.0 && s < 1.0) pts.push_back(s);
    }
  }
  return pts;
}

QuadratureProblem unit_problem(std::function<double(double)> f, double tol,
                               std::vector<double> hints) {
  QuadratureProblem q;
  q.integrand = std::move(f);
  q.lower = 0.0;
  q.upper = 1.0;
  q.rel_tol = tol;
  q.breakpoints = std::move(hints);
  return q;
}

// -expm1(-u) / u, with value 1 at u = 0
double one_minus_exp_over(double u) { return u == 0.0 ? 1.0 : -std::expm1(-u) / u; }

}  // namespace

double y_n(double t, int n) {
  if (t <= 0.0) return n == 1 ? 1.0 : 0.0;
  return std::pow(t, n - 1) * (n - (n - 1.0) * t);
}

double z_fn(double s, int n) {
  if (s <= 0.0) return 0.0;
  return -s * (1.0 + n * std::expm1(-std::log(s) / n));
}

double z_limit(double s) {
  if (s <= 0.0) return 0.0;
  return -(s - s * std::log(s));
}

std::vector<double> t_panel_hints(int n, double u) {
  const int levels = static_cast<int>(std::ceil(std::log2(std::max(2, n)))) + 6;
  auto pts = geometric_panels(0.0, 1.0, 0.5, levels);
  if (u > 1.0 && n >= 2) {
    const double knee = std::pow(1.0 / (n * u), 1.0 / (n - 1.0));
    for (double f : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0}) {
      const double t = f * knee;
      if (t > 0.0 && t < 1.0) pts.push_back(t);
    }
  }
  return pts;
}

double g_fn(int n, double u, double tol) {
  require_degree(n, "g_fn");
  auto q = unit_problem([n, u](double t) { return std::exp(-y_n(t, n) * u); }, tol,
                        t_panel_hints(n, u));
  return integrate_checked(q, "g_fn");
}

double h_fn(int n, double u, double tol) {
  require_degree(n, "h_fn");
  auto q = unit_problem([n, u](double s) { return std::exp(z_fn(s, n) * u); }, tol,
                        s_panel_hints(u));
  return integrate_checked(q, "h_fn");
}

double h_limit(double u, double tol) {
  auto q = unit_problem([u](double s) { return std::exp(z_limit(s) * u); }, tol, s_panel_hints(u));
  return integrate_checked(q, "h_limit");
}

double g_minus_exp_over_u(int n, double u, double tol) {
  require_degree(n, "g_minus_exp_over_u");
  if (u == 0.0) return 1.0 - 2.0 / (n + 1.0);
  std::function<double(double)> f;
  if (u < 1.0) {
    // (e^{-y u} - e^{-u}) / u = e^{-u} expm1((1 - y) u) / u
    const double damp = std::exp(-u);
    f = [n, u, damp](double t) { return damp * std::expm1((1.0 - y_n(t, n)) * u) / u; };
  } else {
    const double tail = std::exp(-u);
    f = [n, u, tail](double t) { return (std::exp(-y_n(t, n) * u) - tail) / u; };
  }
  return integrate_checked(unit_problem(std::move(f), tol, t_panel_hints(n, u)),
                           "g_minus_exp_over_u");
}

double density_direct(int n, double r, double tol) {
  require_degree(n, "density_direct");
  require_nonnegative(r, "density_direct");
  const double u = r * r;
  auto q = unit_problem(
      [n, u](double t) {
        const double y = y_n(t, n);
        return y * std::exp(-y * u);
      },
      tol, t_panel_hints(n, u));
  return (n - 1.0) / kPi * integrate_checked(q, "density_direct");
}

double density_via_identity(int n, double r, double tol) {
  require_degree(n, "density_via_identity");
  require_nonnegative(r, "density_via_identity");
  const double u = r * r;
  return (n - 1.0) / (n * kPi) * (g_minus_exp_over_u(n, u, tol) + h_fn(n, u, tol));
}

double density_exact(int n, double r, double tol) {
  if (n > kLargeDegreeThreshold) return density_via_identity(n, r, tol);
  return density_direct(n, r, tol);
}

double density_unsimplified(int n, double r, double tol) {
  require_degree(n, "density_unsimplified");
  require_nonnegative(r, "density_unsimplified");
  const double u = r * r;
  const double m = n * (n - 1.0);
  auto q = unit_problem(
      [n, u, m](double t) {
        const double y = y_n(t, n);
        const double layer = m * u * (1.0 - t) * (1.0 - t) * std::pow(t, 2 * n - 2);
        return (layer + 2.0 * std::pow(t, n)) * std::exp(-y * u);
      },
      tol, t_panel_hints(n, u));
  return (n - 1.0) / kPi * integrate_checked(q, "density_unsimplified");
}

double density_asymptotic(double r, double tol) {
  require_nonnegative(r, "density_asymptotic");
  const double u = r * r;
  return (one_minus_exp_over(u) + h_limit(u, tol)) / kPi;
}

double density_modulus_asymptotic(double x, double tol) {
  require_nonnegative(x, "density_modulus_asymptotic");
  if (x == 0.0) return 0.0;
  const double u = x * x;
  return 2.0 * (-std::expm1(-u)) / x + 2.0 * x * h_limit(u, tol);
}

double density_modulus_exact(int n, double x, double tol) {
  require_nonnegative(x, "density_modulus_exact");
  return 2.0 * kPi * x * density_exact(n, x, tol);
}

double identity_check_firstestimate(int n, double u, double tol) {
  require_degree(n, "identity_check_firstestimate");
  if (!(u > 0.0)) throw std::invalid_argument("identity_check_firstestimate: u must be > 0");
  const double lhs = density_direct(n, std::sqrt(u), tol);
  const double rhs = (n - 1.0) / (n * kPi) * (g_minus_exp_over_u(n, u, tol) + h_fn(n, u, tol));
  return std::abs(lhs - rhs);
}

std::string_view to_string(DensityTag tag) {
  switch (tag) {
    case DensityTag::exact: return "exact";
    case DensityTag::unsimplified: return "unsimplified";
    case DensityTag::asymptotic: return "asymptotic";
    case DensityTag::modulus_exact: return "modulus_exact";
    case DensityTag::modulus_asymptotic: return "modulus_asymptotic";
  }
  return "unknown";
}

std::optional<DensityTag> parse_density_tag(std::string_view name) {
  for (auto tag : {DensityTag::exact, DensityTag::unsimplified, DensityTag::asymptotic,
                   DensityTag::modulus_exact, DensityTag::modulus_asymptotic}) {
    if (to_string(tag) == name) return tag;
  }
  return std::nullopt;
}

double evaluate_model(const DensityModel& model, double r, double tol) {
  switch (model.tag) {
    case DensityTag::exact: return density_exact(model.n, r, tol);
    case DensityTag::unsimplified: return density_unsimplified(model.n, r, tol);
    case DensityTag::asymptotic: return density_asymptotic(r, tol);
    case DensityTag::modulus_exact: return density_modulus_exact(model.n, r, tol);
    case DensityTag::modulus_asymptotic: return density_modulus_asymptotic(r, tol);
  }
  throw std::invalid_argument("evaluate_model: unknown tag");
}

double radial_measure(const DensityModel& model, double r, double tol) {
  const double value = evaluate_model(model, r, tol);
  return model.is_modulus() ? value : 2.0 * kPi * r * value;
}

double bin_expectation(const DensityModel& model, double a, double b, double outer_tol,
                       double inner_tol) {
  QuadratureProblem q;
  q.integrand = [&model, inner_tol](double r) { return radial_measure(model, r, inner_tol); };
  q.lower = a;
  q.upper = b;
  q.rel_tol = outer_tol;
  q.abs_tol = 1e-300;
  return integrate_checked(q, "bin_expectation");
}

RadialDensityCurve density_curve(const DensityModel& model, std::vector<double> radii,
                                 double tol) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] >= 0.0)) throw std::invalid_argument("density_curve: negative radius");
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw std::invalid_argument("density_curve: radii must be strictly ascending");
    }
  }
  RadialDensityCurve curve;
  curve.model = model;
  curve.quad_tol = tol;
  curve.values.reserve(radii.size());
  for (double r : radii) curve.values.push_back(evaluate_model(model, r, tol));
  curve.radii = std::move(radii);
  return curve;
}

std::vector<MassStep> mass_truncation_sequence(int n, double r0, double rel_stop,
                                               int max_doublings) {
  require_degree(n, "mass_truncation_sequence");
  const DensityModel model{DensityTag::exact, n};
  std::vector<MassStep> steps;
  double mass = bin_expectation(model, 0.0, r0, 1e-9);
  steps.push_back({r0, mass});
  double radius = r0;
  for (int k = 0; k < max_doublings; ++k) {
    const double shell = bin_expectation(model, radius, 2.0 * radius, 1e-9);
    radius *= 2.0;
    mass += shell;
    steps.push_back({radius, mass});
    if (shell < rel_stop * mass) break;
  }
  return steps;
}

}  // namespace su2crit
