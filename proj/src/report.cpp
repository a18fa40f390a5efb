#include "su2crit/report.hpp"

#include <charconv>
#include <cmath>

namespace su2crit {

using nlohmann::json;

std::string version_string() { return "0.1.0"; }

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_density_csv(std::ostream& os, const RadialDensityCurve& curve) {
  os << "r,density\n";
  for (std::size_t i = 0; i < curve.radii.size(); ++i) {
    os << format_double(curve.radii[i]) << ',' << format_double(curve.values[i]) << '\n';
  }
}

json to_json(const ExperimentConfig& config) {
  return {
      {"n", config.n},
      {"trials", config.trials},
      {"seed", config.master_seed},
      {"bins", config.bin_edges.size() - 1},
      {"max_radius", config.max_radius()},
      {"bin_edges", config.bin_edges},
      {"workers", config.workers},
      {"max_rejection_rate", config.max_rejection_rate},
      {"root_options",
       {{"max_iterations", config.roots.max_iterations},
        {"polish_steps", config.roots.polish_steps},
        {"residual_tol", config.roots.residual_tol},
        {"lead_underflow", config.roots.lead_underflow}}},
  };
}

json to_json(const RadialHistogram& hist) {
  json mean = json::array(), variance = json::array();
  for (std::size_t b = 0; b < hist.bins(); ++b) {
    mean.push_back(hist.mean(b));
    variance.push_back(hist.variance(b));
  }
  return {
      {"n", hist.n},
      {"bin_edges", hist.bin_edges},
      {"count_sum", hist.count_sum},
      {"count_sumsq", hist.count_sumsq},
      {"mean", mean},
      {"variance", variance},
      {"overflow",
       {{"sum", hist.overflow_sum},
        {"sumsq", hist.overflow_sumsq},
        {"mean", hist.overflow_mean()},
        {"variance", hist.overflow_variance()}}},
      {"trials_accepted", hist.trials_accepted},
      {"trials_rejected", hist.trials_rejected},
  };
}

json to_json(const RunDiagnostics& diag) {
  json status = json::object();
  for (std::size_t i = 0; i < diag.by_status.size(); ++i) {
    status[std::string(to_string(static_cast<RootStatus>(i)))] = diag.by_status[i];
  }
  return {
      {"trials", diag.trials},
      {"accepted", diag.accepted},
      {"rejected", diag.rejected},
      {"rejection_rate", diag.rejection_rate()},
      {"by_status", status},
      {"rejected_trials", diag.rejected_trials},
      {"values_recorded", diag.values_recorded},
      {"wrong_count_trials", diag.wrong_count_trials},
      {"max_iterations", diag.max_iterations},
      {"max_residual", diag.max_residual},
      {"max_vieta_sum_err", diag.max_vieta_sum_err},
      {"max_vieta_product_err", diag.max_vieta_product_err},
  };
}

json to_json(const DensityModel& model) {
  json j = {{"tag", std::string(to_string(model.tag))}};
  j["n"] = model.needs_degree() ? json(model.n) : json(nullptr);
  return j;
}

json to_json(const ComparisonReport& report) {
  json bins = json::array();
  for (const auto& b : report.bins) {
    bins.push_back({
        {"lower", b.lower},
        {"upper", std::isinf(b.upper) ? json(nullptr) : json(b.upper)},
        {"expected", b.expected},
        {"observed", b.observed},
        {"std_error", b.std_error},
        {"z", std::isfinite(b.z) ? json(b.z) : json(nullptr)},
        {"variance_floor", b.variance_floor},
    });
  }
  return {
      {"model", to_json(report.model)},
      {"n", report.n},
      {"trials", report.trials},
      {"bins", bins},
      {"summary",
       {{"max_abs_z", std::isfinite(report.max_abs_z) ? json(report.max_abs_z) : json(nullptr)},
        {"worst_bin", report.worst_bin},
        {"chi_square", std::isfinite(report.chi_square) ? json(report.chi_square) : json(nullptr)},
        {"dof", report.dof},
        {"shape_failure", report.shape_failure},
        {"shape_failed_bins", report.shape_failed_bins},
        {"z_threshold", report.z_threshold},
        {"gate_enforced", report.gate_enforced},
        {"consistent", report.consistent()},
        {"passed", report.passed()}}},
  };
}

json simulate_payload(const ExperimentConfig& config, const RunResult& run) {
  return {
      {"schema", kSchemaVersion},
      {"kind", "simulate"},
      {"version", version_string()},
      {"config", to_json(config)},
      {"histogram", to_json(run.histogram)},
      {"diagnostics", to_json(run.diagnostics)},
  };
}

json compare_payload(const ExperimentConfig& config, const ComparisonReport& report,
                     const RunDiagnostics* diag, const std::string& source) {
  json j = to_json(report);
  j["schema"] = kSchemaVersion;
  j["kind"] = "compare";
  j["version"] = version_string();
  j["source"] = source;
  j["config"] = to_json(config);
  j["diagnostics"] = diag ? to_json(*diag) : json(nullptr);
  return j;
}

}  // namespace su2crit
