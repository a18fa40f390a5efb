#pragma once

#include <functional>
#include <string>
#include <vector>

namespace su2crit {

struct QuadratureProblem {
  std::function<double(double)> integrand;
  double lower = 0.0;
  double upper = 1.0;
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  /// Interior points where the initial panels are split. Points outside
  /// (lower, upper) are ignored; order does not matter.
  std::vector<double> breakpoints;
  /// Bisection depth below an initial panel at which a panel stops splitting.
  int max_depth = 60;
  int max_intervals = 20000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
  int evaluations = 0;
  int intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7, 15) bisection. The panel with the
/// largest error estimate is split until the summed estimate falls below
/// max(abs_tol, rel_tol * |value|). Local errors use the QUADPACK scaling.
QuadratureResult integrate(const QuadratureProblem& problem);

/// As integrate(), but throws QuadratureError carrying the best estimate
/// when the tolerance is not met.
double integrate_checked(const QuadratureProblem& problem, const std::string& context);

/// count points accumulating geometrically toward `toward`:
/// toward - (toward - from) * ratio^k for k = 1..count.
std::vector<double> geometric_panels(double from, double toward, double ratio, int count);

}  // namespace su2crit
