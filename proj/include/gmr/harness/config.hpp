#pragma once

#include <optional>
#include <string>

#include "gmr/harness/registry.hpp"
#include "gmr/sde/coefficients.hpp"
#include "gmr/sde/picard.hpp"

namespace gmr::harness {

// Experiment configuration. The on-disk format is JSON with four sections;
// see README.md for the full field list. Every field is optional and falls
// back to the defaults below.

enum class Mode { SpOnly, FullSde, GexpProbe };

std::string to_string(Mode mode);

struct Component {
  std::string name;
  ParamMap params;  // only the keys given; registry defaults fill the rest

  friend bool operator==(const Component&, const Component&) = default;
};

/// sp_only input process S_t = drift t + scale B_t.
struct ProcessSpec {
  double drift = 0.0;
  double scale = 1.0;

  friend bool operator==(const ProcessSpec&, const ProcessSpec&) = default;
};

/// gexp_probe payoff of B_T: square, abs, call (x-K)^+, put (K-x)^+.
struct PayoffSpec {
  std::string name = "square";
  double strike = 0.0;

  friend bool operator==(const PayoffSpec&, const PayoffSpec&) = default;
};

struct ProblemSection {
  double x0 = 0.0;
  double horizon = 1.0;
  int n_steps = 6;
  double sigma_low_sq = 1.0;
  double sigma_high_sq = 2.0;
  bool classical_limit = false;
  double p = 2.0;
  int lattice_cap = gexp::kDefaultEnumerationCap;
  Component b{"zero", {}};
  Component h{"zero", {}};
  Component sigma{"constant_sigma", {}};
  Component loss{"linear", {}};
  ProcessSpec process;
  PayoffSpec payoff;
  double pde_dx = 0.02;

  friend bool operator==(const ProblemSection&, const ProblemSection&) = default;
};

struct OutputSection {
  std::string csv = "trace.csv";      // empty: not written
  std::string report = "report.json";

  friend bool operator==(const OutputSection&, const OutputSection&) = default;
};

struct CheckSection {
  double verify_tol = 1e-8;
  std::optional<double> expected_A_terminal;
  double expected_tol = 1e-9;
  double probe_rel_tol = 0.05;

  friend bool operator==(const CheckSection&, const CheckSection&) = default;
};

struct ExperimentConfig {
  Mode mode = Mode::FullSde;
  ProblemSection problem;
  sde::PicardConfig solver;
  OutputSection outputs;
  CheckSection checks;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses and validates. Throws ConfigError naming the offending field;
/// `source` prefixes parse errors.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

/// Canonical JSON text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// Eager invariant checks shared by the parser and programmatic callers.
void validate_config(const ExperimentConfig& config);

/// Assembles the library problem; config must be valid.
sde::MRGSDEProblem build_problem(const ExperimentConfig& config);

}  // namespace gmr::harness
