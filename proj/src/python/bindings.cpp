#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "su2crit/density.hpp"
#include "su2crit/errors.hpp"
#include "su2crit/kacrice.hpp"
#include "su2crit/montecarlo.hpp"
#include "su2crit/report.hpp"
#include "su2crit/roots.hpp"
#include "su2crit/selftest.hpp"

namespace py = pybind11;
using namespace su2crit;

namespace {

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

DensityModel model_from(const std::string& tag, int n) {
  const auto parsed = parse_density_tag(tag);
  if (!parsed) throw py::value_error("unknown density model '" + tag + "'");
  return DensityModel{*parsed, n};
}

ExperimentConfig config_from(int n, std::uint64_t trials, std::uint64_t seed, int bins, double max_radius,
                             int workers) {
  ExperimentConfig c;
  c.n = n;
  c.trials = trials;
  c.master_seed = seed;
  c.bin_edges = uniform_edges(max_radius, bins);
  c.workers = workers;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Critical values of Gaussian SU(2) random polynomials";
  m.attr("__version__") = version_string();

  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);
  py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);
  py::register_exception<RunFailure>(m, "RunFailure", PyExc_RuntimeError);

  m.def(
      "sample_su2",
      [](int n, std::uint64_t seed, std::uint64_t trial) {
        const Su2Poly p = sample_su2(n, SeedPath{seed, trial});
        return std::vector<Complex>(p.coeffs().begin(), p.coeffs().end());
      },
      py::arg("n"), py::arg("seed"), py::arg("trial") = 0,
      "Monomial coefficients a_j sqrt(C(n, j)) of one draw.");

  m.def(
      "evaluate", [](const std::vector<Complex>& c, Complex z) { return evaluate(c, z); }, py::arg("coeffs"),
      py::arg("z"));
  m.def(
      "evaluate_derivs",
      [](const std::vector<Complex>& c, Complex z) {
        const Derivatives d = evaluate_derivs(c, z);
        return py::make_tuple(d.value, d.first, d.second);
      },
      py::arg("coeffs"), py::arg("z"), "(p, p', p'') at z.");

  m.def(
      "critical_points",
      [](const std::vector<Complex>& c) {
        const CriticalSet cs = critical_points(Su2Poly(c));
        py::dict out;
        out["points"] = cs.points;
        out["values"] = cs.values;
        out["residuals"] = cs.residuals;
        out["status"] = std::string(to_string(cs.status));
        out["vieta_sum_rel_err"] = cs.vieta.sum_rel_err;
        out["vieta_product_rel_err"] = cs.vieta.product_rel_err;
        return out;
      },
      py::arg("coeffs"));

  m.def("covariance_kernel", &covariance_kernel, py::arg("n"), py::arg("z"), py::arg("w"));
  m.def(
      "covariance_matrix",
      [](int n, Complex z) {
        const auto c = covariance_matrix(n, z);
        std::vector<std::vector<Complex>> rows(3, std::vector<Complex>(3));
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) rows[i][j] = c.entry(i, j);
        }
        return rows;
      },
      py::arg("n"), py::arg("z"), "Rows (E[v_j conj v_i])_j for v = (p, p', p'').");
  m.def("det_delta", &det_delta, py::arg("n"), py::arg("z"));
  m.def("q_form", &q_form, py::arg("n"), py::arg("z"), py::arg("x"), py::arg("xi"));
  m.def("k_z", &k_z, py::arg("n"), py::arg("z"), py::arg("x"));

  m.def("density_exact", &density_exact, py::arg("n"), py::arg("r"), py::arg("tol") = kDefaultQuadTol);
  m.def("density_unsimplified", &density_unsimplified, py::arg("n"), py::arg("r"),
        py::arg("tol") = kDefaultQuadTol);
  m.def("density_asymptotic", &density_asymptotic, py::arg("r"), py::arg("tol") = kDefaultQuadTol);
  m.def("density_modulus_exact", &density_modulus_exact, py::arg("n"), py::arg("x"),
        py::arg("tol") = kDefaultQuadTol);
  m.def("density_modulus_asymptotic", &density_modulus_asymptotic, py::arg("x"),
        py::arg("tol") = kDefaultQuadTol);
  m.def("g_fn", &g_fn, py::arg("n"), py::arg("u"), py::arg("tol") = kDefaultQuadTol);
  m.def("h_fn", &h_fn, py::arg("n"), py::arg("u"), py::arg("tol") = kDefaultQuadTol);
  m.def("identity_check_firstestimate", &identity_check_firstestimate, py::arg("n"), py::arg("u"),
        py::arg("tol") = kDefaultQuadTol);

  m.def(
      "density_curve",
      [](const std::string& model, std::vector<double> radii, int n, double tol) {
        return density_curve(model_from(model, n), std::move(radii), tol).values;
      },
      py::arg("model"), py::arg("radii"), py::arg("n") = 0, py::arg("tol") = kDefaultQuadTol);

  m.def(
      "simulate",
      [](int n, std::uint64_t trials, std::uint64_t seed, int bins, double max_radius, int workers) {
        const ExperimentConfig c = config_from(n, trials, seed, bins, max_radius, workers);
        RunResult run;
        {
          py::gil_scoped_release release;
          run = run_trials(c);
        }
        return to_python(simulate_payload(c, run));
      },
      py::arg("n") = 12, py::arg("trials") = 20000, py::arg("seed") = 1, py::arg("bins") = 60,
      py::arg("max_radius") = 6.0, py::arg("workers") = 1, "Same payload as `su2crit simulate`.");

  m.def(
      "compare",
      [](int n, std::uint64_t trials, std::uint64_t seed, int bins, double max_radius, int workers,
         const std::string& model, std::optional<int> model_n, bool synthetic) {
        const ExperimentConfig c = config_from(n, trials, seed, bins, max_radius, workers);
        validate(c);
        const DensityModel dm = model_from(model, model_n.value_or(n));
        CompareOptions opts;
        opts.allow_degree_mismatch = model_n.has_value();
        nlohmann::json payload;
        {
          py::gil_scoped_release release;
          if (synthetic) {
            const auto hist = synthetic_histogram(dm, n, trials, c.bin_edges, seed);
            payload = compare_payload(c, compare(hist, dm, opts), nullptr, "synthetic");
          } else {
            const RunResult run = run_trials(c);
            payload = compare_payload(c, compare(run.histogram, dm, opts), &run.diagnostics, "simulation");
          }
        }
        return to_python(payload);
      },
      py::arg("n") = 12, py::arg("trials") = 20000, py::arg("seed") = 1, py::arg("bins") = 60,
      py::arg("max_radius") = 6.0, py::arg("workers") = 1, py::arg("model") = "exact",
      py::arg("model_n") = py::none(), py::arg("synthetic") = false, "Same payload as `su2crit compare`.");

  m.def(
      "selftest",
      [](bool full) {
        py::list rows;
        for (const auto& r : run_selftest(full)) {
          py::dict d;
          d["name"] = r.name;
          d["max_residual"] = r.max_residual;
          d["tolerance"] = r.tolerance;
          d["passed"] = r.passed;
          rows.append(d);
        }
        return rows;
      },
      py::arg("full") = false);
}
