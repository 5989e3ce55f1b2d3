#pragma once

// Experiment runners: each produces a CSV table, a JSON report with
// qualitative and theorem checks, and optionally an SVG figure.

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace qha {

struct ExperimentConfig {
  std::string experiment;
  int d = 0;       // 0 selects the experiment's default
  int n = 0;       // data set size, 0 selects the default
  int trials = 0;  // trials or realizations, 0 selects the default
  std::uint64_t seed = 1;
  std::filesystem::path out = "results";
  bool svg = true;
  int threads = 1;
  nlohmann::json params = nlohmann::json::object();  // experiment-specific overrides
};

/// Reads the fields above from a JSON object; unknown top-level keys are errors.
ExperimentConfig config_from_json(const nlohmann::json& j);

/// The fields that determine numeric output (not out, svg or threads).
nlohmann::json numeric_config_json(const ExperimentConfig& config);

/// FNV-1a 64 over the compact dump of numeric_config_json.
std::uint64_t config_hash(const ExperimentConfig& config);

/// Rectangular table of reals; NaN is written as an empty field.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;  // "# key: value" lines

  void add_row(std::vector<double> row);
  std::string to_csv() const;
};

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

struct ExperimentResult {
  ExperimentConfig config;  // with defaults resolved
  ResultTable table;
  nlohmann::json report;
  std::string svg;                       // empty when the experiment draws nothing
  std::vector<CheckResult> checks;       // qualitative reproduction checks
  std::vector<CheckResult> theorem_checks;

  bool theorems_hold() const;
  bool checks_pass() const;
};

std::vector<std::string> experiment_names();

/// Throws std::invalid_argument for an unknown experiment or bad parameters.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct WrittenFiles {
  std::filesystem::path csv;
  std::filesystem::path svg;  // empty if not written
  std::filesystem::path report;
};

/// Writes <out>/<name>.csv, <name>.report.json and, if enabled, <name>.svg.
WrittenFiles write_experiment(const ExperimentResult& result);

}  // namespace qha
