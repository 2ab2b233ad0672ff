#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gmr/harness/config.hpp"

namespace gmr::harness {

enum ExitCode : int { kExitPass = 0, kExitCheckFailure = 1, kExitConfigError = 2, kExitSolverFailure = 3 };

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=" or ">="
  bool pass = false;
};

struct RunReport {
  std::string mode;
  std::vector<CheckResult> checks;
  nlohmann::json diagnostics = nlohmann::json::object();
  std::string error;  // solver failure message, empty on success
  std::string config_hash;
  std::string version;

  bool pass() const;
  int exit_code() const;
  /// Deterministic JSON text (no timestamps).
  std::string to_json() const;
};

struct RunResult {
  RunReport report;
  std::string csv;  // empty when the run failed before producing a trace
};

/// FNV-1a 64-bit hash of the canonical config text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

/// Runs the configured mode. Solver failures are captured in the report.
RunResult run_experiment(const ExperimentConfig& config);

/// Resolves a relative output path against $GMR_OUTPUT_DIR when set.
std::string output_path(const std::string& path);

/// Writes the CSV and report named in config.outputs; returns the paths
/// written.
std::vector<std::string> write_artifacts(const RunResult& result, const ExperimentConfig& config);

std::string library_version();

}  // namespace gmr::harness
