#include "gmr/harness/run.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "gmr/errors.hpp"
#include "gmr/gexp/expectation.hpp"
#include "gmr/gexp/pde.hpp"
#include "gmr/harness/csv.hpp"
#include "gmr/sde/estimates.hpp"
#include "gmr/sp/diagnostics.hpp"

#ifndef GMR_VERSION
#define GMR_VERSION "unknown"
#endif

namespace gmr::harness {
namespace {

using nlohmann::json;

CheckResult at_most(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, "<=", value <= threshold};
}

CheckResult at_least(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, ">=", value >= threshold};
}

double min_increment(const sp::DeterministicPath& A) {
  double m = 0.0;
  for (std::size_t k = 1; k < A.values.size(); ++k) m = std::min(m, A.values[k] - A.values[k - 1]);
  return m;
}

void common_sp_checks(RunReport& report, const sp::VerificationReport& v, const sp::DeterministicPath& A,
                      const ExperimentConfig& config) {
  const double tol = config.checks.verify_tol;
  const double total = A.values.back() - A.values.front();
  report.checks.push_back(at_most("identity_residual", v.identity_residual, 1e-12));
  report.checks.push_back(at_least("constraint_min", v.constraint_min, -tol));
  report.checks.push_back(at_most("flatoff_residual", v.flatoff_residual, tol * (1.0 + total)));
  report.checks.push_back(at_most("A_initial_abs", std::abs(A.values.front()), 0.0));
  report.checks.push_back(at_least("A_min_increment", min_increment(A), 0.0));
  if (config.checks.expected_A_terminal) {
    report.checks.push_back(at_most("A_terminal_error", std::abs(A.values.back() - *config.checks.expected_A_terminal),
                                    config.checks.expected_tol));
  }
}

json modulus_json(const sp::ModulusDiagnostics& m) {
  return {{"worst_excess", m.worst_excess}, {"worst_s", m.worst_s}, {"worst_t", m.worst_t}, {"holds", m.holds}};
}

sp::ProcessOnLattice arithmetic_process(const ExperimentConfig& config, const gexp::PathLattice& lattice) {
  const auto& pr = config.problem;
  return sp::ProcessOnLattice::from_nodes(lattice, [&](double t, double b, double) {
    return pr.x0 + pr.process.drift * t + pr.process.scale * b;
  });
}

RunResult run_sp_only(const ExperimentConfig& config, RunReport report) {
  const auto problem = build_problem(config);
  const auto lattice = gexp::build_lattice(problem.params, problem.grid, problem.enumeration_cap);
  const auto S = arithmetic_process(config, lattice);
  const auto sol = sp::solve_sp(config.solver.method, problem.loss, S, lattice, config.solver.root_tol);
  const auto v = sp::verify_sp(sol, problem.loss, S, lattice, config.checks.verify_tol);
  common_sp_checks(report, v, sol.A, config);
  const auto modulus = sp::sp_modulus_check(sol, problem.loss, S, lattice, config.checks.verify_tol);
  report.checks.push_back(at_most("A_modulus_excess", modulus.worst_excess, config.checks.verify_tol));
  report.diagnostics["sp_modulus"] = modulus_json(modulus);
  report.diagnostics["A_terminal"] = sol.A.values.back();
  RunResult out{std::move(report), {}};
  out.csv = trace_csv(trace_rows(sol.X, sol.A, problem.loss, lattice, problem.p));
  return out;
}

RunResult run_full_sde(const ExperimentConfig& config, RunReport report) {
  const auto problem = build_problem(config);
  const auto lattice = gexp::build_lattice(problem.params, problem.grid, problem.enumeration_cap);
  const auto sol = sde::picard_solve(problem, lattice, config.solver);

  json subs = json::array();
  double final_distance = 0.0;
  double worst_ratio = 0.0;
  for (const auto& s : sol.subintervals) {
    subs.push_back({{"start_step", s.start_step},
                    {"end_step", s.end_step},
                    {"iterations", s.iterations},
                    {"gamma_applications", s.gamma_applications},
                    {"restarts", s.restarts},
                    {"distances", s.distances},
                    {"ratios", s.ratios}});
    final_distance = std::max(final_distance, s.distances.back());
    for (double r : s.ratios) worst_ratio = std::max(worst_ratio, r);
  }
  report.diagnostics["subintervals"] = subs;
  report.diagnostics["delta_steps"] = sol.delta_steps;
  report.diagnostics["delta"] = sol.delta_steps * problem.grid.dt();
  report.diagnostics["junction_gap"] = sol.junction_gap;
  report.diagnostics["A_terminal"] = sol.A.values.back();

  report.checks.push_back(at_most("picard_final_distance", final_distance, config.solver.tol));
  report.checks.push_back(
      {"picard_worst_ratio", worst_ratio, config.solver.contraction_guard, "<", worst_ratio < config.solver.contraction_guard});

  const auto v = sp::verify_sp({sol.X, sol.A}, problem.loss, sol.U, lattice, config.checks.verify_tol);
  common_sp_checks(report, v, sol.A, config);
  const auto modulus = sp::sp_modulus_check({sol.X, sol.A}, problem.loss, sol.U, lattice, config.checks.verify_tol);
  report.checks.push_back(at_most("A_modulus_excess", modulus.worst_excess, config.checks.verify_tol));
  report.diagnostics["sp_modulus"] = modulus_json(modulus);

  const auto moment = sde::check_moment_estimate(sol, problem, lattice);
  report.diagnostics["moment"] = {{"lhs", moment.lhs}, {"rhs", moment.rhs}, {"ratio", moment.ratio}};
  const auto fit = sde::check_A_modulus(sol, problem);
  report.diagnostics["A_modulus_fit"] = {{"C", fit.fitted_C}, {"worst_s", fit.worst_s}, {"worst_t", fit.worst_t}};
  if (problem.loss.smooth) {
    const auto lip = sde::check_A_lipschitz(sol, problem);
    report.diagnostics["A_lipschitz"] = {{"ratio", lip.ratio}, {"worst_step", lip.worst_step}};
  }

  RunResult out{std::move(report), {}};
  out.csv = trace_csv(trace_rows(sol.X, sol.A, problem.loss, lattice, problem.p));
  return out;
}

std::function<double(double)> payoff_fn(const PayoffSpec& p) {
  const double k = p.strike;
  if (p.name == "abs") return [](double x) { return std::abs(x); };
  if (p.name == "call") return [k](double x) { return std::max(x - k, 0.0); };
  if (p.name == "put") return [k](double x) { return std::max(k - x, 0.0); };
  return [](double x) { return x * x; };
}

double relative_gap(double a, double reference) {
  const double scale = std::abs(reference);
  return scale > 0.0 ? std::abs(a - reference) / scale : std::abs(a - reference);
}

RunResult run_probe(const ExperimentConfig& config, RunReport report) {
  const auto& pr = config.problem;
  const auto params = gexp::GParams::make(pr.sigma_low_sq, pr.sigma_high_sq, pr.classical_limit);
  const auto lattice = gexp::build_lattice(params, gexp::TimeGrid(pr.horizon, pr.n_steps), pr.lattice_cap);
  const auto phi = payoff_fn(pr.payoff);
  const auto xi = gexp::terminal_functional(lattice, pr.n_steps, [&](double b, double) { return phi(b); });
  const double sup = gexp::sup_expectation(lattice, xi);
  const double inf = gexp::inf_expectation(lattice, xi);

  gexp::PdeGrid grid;
  grid.dx = pr.pde_dx;
  const auto upper = gexp::pde_g_heat_solve(phi, params, pr.horizon, grid);
  const auto lower = gexp::pde_g_heat_solve([&](double x) { return -phi(x); }, params, pr.horizon, grid);
  const double pde_sup = upper.value_at_origin;
  const double pde_inf = -lower.value_at_origin;

  report.checks.push_back(at_most("sup_lattice_vs_pde", relative_gap(sup, pde_sup), config.checks.probe_rel_tol));
  report.checks.push_back(at_most("inf_lattice_vs_pde", relative_gap(inf, pde_inf), config.checks.probe_rel_tol));
  report.diagnostics["lattice"] = {{"sup", sup}, {"inf", inf}};
  report.diagnostics["pde"] = {{"sup", pde_sup}, {"inf", pde_inf}, {"dt", upper.dt}, {"time_steps", upper.time_steps},
                               {"warnings", upper.warnings}};
  RunResult out{std::move(report), {}};
  out.csv = single_row_csv({"E_sup", "E_inf", "pde_E_sup", "pde_E_inf"}, {sup, inf, pde_sup, pde_inf});
  return out;
}

}  // namespace

bool RunReport::pass() const {
  if (!error.empty()) return false;
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

int RunReport::exit_code() const {
  if (!error.empty()) return kExitSolverFailure;
  return pass() ? kExitPass : kExitCheckFailure;
}

std::string RunReport::to_json() const {
  json checks_json = json::array();
  for (const auto& c : checks) {
    checks_json.push_back(
        {{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"relation", c.relation}, {"pass", c.pass}});
  }
  json j = {{"mode", mode},
            {"pass", pass()},
            {"exit_code", exit_code()},
            {"checks", checks_json},
            {"diagnostics", diagnostics},
            {"error", error.empty() ? json(nullptr) : json(error)},
            {"provenance", {{"config_hash", config_hash}, {"version", version}}}};
  return j.dump(2) + "\n";
}

std::string library_version() { return GMR_VERSION; }

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_config(config)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunResult run_experiment(const ExperimentConfig& config) {
  RunReport report;
  report.mode = to_string(config.mode);
  report.config_hash = config_hash(config);
  report.version = library_version();
  try {
    switch (config.mode) {
      case Mode::SpOnly:
        return run_sp_only(config, report);
      case Mode::FullSde:
        return run_full_sde(config, report);
      case Mode::GexpProbe:
        return run_probe(config, report);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    report.error = e.what();
  }
  return {std::move(report), {}};
}

std::string output_path(const std::string& path) {
  const char* dir = std::getenv("GMR_OUTPUT_DIR");
  std::filesystem::path p(path);
  if (dir != nullptr && *dir != '\0' && p.is_relative()) p = std::filesystem::path(dir) / p;
  return p.string();
}

std::vector<std::string> write_artifacts(const RunResult& result, const ExperimentConfig& config) {
  std::vector<std::string> written;
  auto write = [&](const std::string& name, const std::string& body) {
    if (name.empty()) return;
    const std::filesystem::path p = output_path(name);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + p.string() + "'");
    out << body;
    written.push_back(p.string());
  };
  if (!result.csv.empty()) write(config.outputs.csv, result.csv);
  write(config.outputs.report, result.report.to_json());
  return written;
}

}  // namespace gmr::harness
