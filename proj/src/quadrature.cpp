#include "su2crit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "su2crit/errors.hpp"

namespace su2crit {

namespace {

// Kronrod nodes (descending, center last) and weights; Gauss weights belong
// to the odd-indexed Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEpmach = std::numeric_limits<double>::epsilon();
constexpr double kUflow = std::numeric_limits<double>::min();

struct Panel {
  double a, b;
  double value, error;
  int depth;
};

Panel gk15(const std::function<double(double)>& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double habs = std::abs(half);
  const double value = resk * half;
  resabs *= habs;
  resasc *= habs;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > kUflow / (50.0 * kEpmach)) err = std::max(kEpmach * 50.0 * resabs, err);
  return {a, b, value, err, depth};
}

struct ByError {
  const std::vector<Panel>* panels;
  bool operator()(std::size_t l, std::size_t r) const {
    const auto& pl = (*panels)[l];
    const auto& pr = (*panels)[r];
    if (pl.error != pr.error) return pl.error < pr.error;
    return l > r;
  }
};

}  // namespace

QuadratureResult integrate(const QuadratureProblem& problem) {
  QuadratureResult out;
  const double lo = problem.lower;
  const double hi = problem.upper;
  if (lo == hi) {
    out.converged = true;
    return out;
  }

  std::vector<double> cuts{lo, hi};
  for (double x : problem.breakpoints) {
    if (x > std::min(lo, hi) && x < std::max(lo, hi)) cuts.push_back(x);
  }
  if (lo < hi) {
    std::sort(cuts.begin(), cuts.end());
  } else {
    std::sort(cuts.begin(), cuts.end(), std::greater<>());
  }
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Panel> panels;
  panels.reserve(static_cast<std::size_t>(problem.max_intervals) + cuts.size());
  std::priority_queue<std::size_t, std::vector<std::size_t>, ByError> active(ByError{&panels});

  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    panels.push_back(gk15(problem.integrand, cuts[i], cuts[i + 1], 0));
    out.evaluations += 15;
    total += panels.back().value;
    total_err += panels.back().error;
    active.push(panels.size() - 1);
  }

  auto target = [&] { return std::max(problem.abs_tol, problem.rel_tol * std::abs(total)); };

  while (total_err > target()) {
    if (active.empty() || static_cast<int>(panels.size()) + 2 > problem.max_intervals) break;
    const std::size_t idx = active.top();
    active.pop();
    const Panel parent = panels[idx];
    const double mid = 0.5 * (parent.a + parent.b);
    if (parent.depth >= problem.max_depth || mid == parent.a || mid == parent.b) continue;

    const Panel left = gk15(problem.integrand, parent.a, mid, parent.depth + 1);
    const Panel right = gk15(problem.integrand, mid, parent.b, parent.depth + 1);
    out.evaluations += 30;
    total += left.value + right.value - parent.value;
    total_err += left.error + right.error - parent.error;
    panels[idx] = left;
    active.push(idx);
    panels.push_back(right);
    active.push(panels.size() - 1);
  }

  // exact re-summation; the running totals only steer the loop
  double value = 0.0;
  double err = 0.0;
  for (const auto& p : panels) {
    value += p.value;
    err += p.error;
  }
  out.value = value;
  out.error = err;
  out.intervals = static_cast<int>(panels.size());
  out.converged = std::isfinite(value) &&
                  err <= std::max(problem.abs_tol, problem.rel_tol * std::abs(value));
  return out;
}

double integrate_checked(const QuadratureProblem& problem, const std::string& context) {
  const QuadratureResult r = integrate(problem);
  if (!r.converged) {
    std::ostringstream msg;
    msg.precision(17);
    msg << context << ": quadrature failed on [" << problem.lower << ", " << problem.upper
        << "], estimate " << r.value << " +- " << r.error << " after " << r.intervals
        << " panels";
    throw QuadratureError(msg.str(), r.value, r.error);
  }
  return r.value;
}

std::vector<double> geometric_panels(double from, double toward, double ratio, int count) {
  std::vector<double> pts;
  pts.reserve(count);
  double width = toward - from;
  for (int k = 0; k < count; ++k) {
    width *= ratio;
    pts.push_back(toward - width);
  }
  return pts;
}

}  // namespace su2crit
