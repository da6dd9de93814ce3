#pragma once

// Scenario orchestration behind the qmass-lab CLI: parameter validation,
// pipeline execution, CSV data files and the JSON run summary.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qmlab::scenarios {

inline constexpr int kSchemaVersion = 1;

/// Scenario names accepted on the command line.
const std::vector<std::string>& scenario_names();

struct ScenarioConfig {
  std::string kind;
  /// Complete parameter block: defaults merged with the config file and
  /// --set overrides, every value validated.
  nlohmann::json params;
  std::filesystem::path out_dir{"."};
};

/// Merges defaults, the config document and `key=value` overrides (values are
/// parsed as JSON, falling back to plain strings), then validates every
/// physical parameter against the owning module. Throws invalid-config with a
/// field-level message on any problem.
ScenarioConfig make_config(const std::string& kind, const nlohmann::json& document,
                           const std::vector<std::string>& overrides,
                           const std::filesystem::path& out_dir);

struct Metric {
  std::optional<double> predicted;
  std::optional<double> measured;
  std::optional<double> rel_error;
  double tolerance{0};
  bool pass{false};
  /// Where each side comes from, e.g. "formula: D lambda / d vs oracle: intensity maxima".
  std::string provenance;

  bool operator==(const Metric&) const = default;
};

/// |measured - predicted| / |predicted| <= tolerance.
Metric relative_metric(double predicted, double measured, double tolerance, std::string provenance);
/// |measured - predicted| <= tolerance, for quantities predicted to vanish.
Metric absolute_metric(double predicted, double measured, double tolerance, std::string provenance);
/// measured <= tolerance, for one-sided error measures.
Metric bound_metric(double measured, double tolerance, std::string provenance);

struct RunSummary {
  std::string scenario;
  nlohmann::json parameters;
  std::map<std::string, Metric> metrics;
  std::vector<std::string> files;
  std::vector<std::string> warnings;
  double wall_clock_seconds{0};

  bool all_pass() const;
  bool operator==(const RunSummary&) const = default;
};

/// Executes the scenario, writing data files into cfg.out_dir.
RunSummary run(const ScenarioConfig& cfg);

nlohmann::json to_json(const RunSummary& summary);
RunSummary summary_from_json(const nlohmann::json& doc);

void export_summary(const RunSummary& summary, const std::filesystem::path& path);

/// Process exit codes of the CLI.
enum ExitCode : int { kPass = 0, kMetricFailure = 1, kUsage = 2, kRuntime = 3 };

}  // namespace qmlab::scenarios
