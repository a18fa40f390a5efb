#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "su2crit/density.hpp"
#include "su2crit/montecarlo.hpp"

namespace su2crit {

inline constexpr int kSchemaVersion = 1;
std::string version_string();

/// Locale-independent, 17 significant digits.
std::string format_double(double value);

/// `r,density` header then one row per grid point.
void write_density_csv(std::ostream& os, const RadialDensityCurve& curve);

nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json to_json(const RadialHistogram& hist);
nlohmann::json to_json(const RunDiagnostics& diag);
nlohmann::json to_json(const DensityModel& model);
nlohmann::json to_json(const ComparisonReport& report);

/// {schema, kind: "simulate", version, config, histogram, diagnostics}
nlohmann::json simulate_payload(const ExperimentConfig& config, const RunResult& run);
/// {schema, kind: "compare", version, source, config, model, bins, summary, diagnostics?}
nlohmann::json compare_payload(const ExperimentConfig& config, const ComparisonReport& report,
                               const RunDiagnostics* diag, const std::string& source);

}  // namespace su2crit
