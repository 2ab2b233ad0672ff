#include "gmr/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gmr/errors.hpp"

namespace gmr::harness {
namespace {

using nlohmann::json;

constexpr int kMaxLatticeCap = 12;

// Reads one JSON object, remembering which keys were consumed so that
// anything left over is reported as an unknown field.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + " must be an object");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* get(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = get(key)) {
      if (!v->is_number()) throw ConfigError(field(key) + " must be a number");
      out = v->get<double>();
      if (!std::isfinite(out)) throw ConfigError(field(key) + " must be finite");
    }
  }

  void integer(const std::string& key, int& out) {
    if (const json* v = get(key)) {
      if (v->is_number_integer()) {
        out = v->get<int>();
      } else if (v->is_number_float() && std::floor(v->get<double>()) == v->get<double>() &&
                 std::abs(v->get<double>()) < 1e9) {
        out = static_cast<int>(v->get<double>());
      } else {
        throw ConfigError(field(key) + " must be an integer");
      }
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = get(key)) {
      if (!v->is_boolean()) throw ConfigError(field(key) + " must be true or false");
      out = v->get<bool>();
    }
  }

  void string(const std::string& key, std::string& out) {
    if (const json* v = get(key)) {
      if (!v->is_string()) throw ConfigError(field(key) + " must be a string");
      out = v->get<std::string>();
    }
  }

  std::optional<Section> child(const std::string& key) {
    if (const json* v = get(key)) return Section(*v, field(key));
    return std::nullopt;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) throw ConfigError("unknown field " + field(key));
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_component(Section& parent, const std::string& key, Component& out) {
  auto s = parent.child(key);
  if (!s) return;
  s->string("name", out.name);
  out.params.clear();
  if (const json* p = s->get("params")) {
    if (!p->is_object()) throw ConfigError(s->field("params") + " must be an object");
    for (const auto& [k, v] : p->items()) {
      if (!v.is_number()) throw ConfigError(s->field("params") + "." + k + " must be a number");
      out.params[k] = v.get<double>();
    }
  }
  s->finish();
}

Mode parse_mode(const std::string& s) {
  if (s == "sp_only") return Mode::SpOnly;
  if (s == "full_sde") return Mode::FullSde;
  if (s == "gexp_probe") return Mode::GexpProbe;
  throw ConfigError("mode '" + s + "' is not one of sp_only, full_sde, gexp_probe");
}

sp::SpMethod parse_method(const std::string& s) {
  if (s == "operator") return sp::SpMethod::Operator;
  if (s == "reduction") return sp::SpMethod::Reduction;
  throw ConfigError("solver.sp_method '" + s + "' is not one of operator, reduction");
}

std::string method_name(sp::SpMethod m) { return m == sp::SpMethod::Operator ? "operator" : "reduction"; }

json component_json(const Component& c) {
  json params = json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  return {{"name", c.name}, {"params", params}};
}

void rethrow_with(const std::string& field, const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    throw ConfigError(field + ": " + e.what());
  } catch (const Error& e) {
    throw ConfigError(field + ": " + e.what());
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

std::string num(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::SpOnly:
      return "sp_only";
    case Mode::FullSde:
      return "full_sde";
    case Mode::GexpProbe:
      return "gexp_probe";
  }
  return "full_sde";
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto offset = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n');
    throw ConfigError(source + ": parse error near line " + std::to_string(line) + ": " + e.what());
  }

  ExperimentConfig c;
  Section root(j, "");
  std::string mode = to_string(c.mode);
  root.string("mode", mode);
  c.mode = parse_mode(mode);

  if (auto p = root.child("problem")) {
    auto& pr = c.problem;
    p->number("x0", pr.x0);
    p->number("T", pr.horizon);
    p->integer("n_steps", pr.n_steps);
    p->number("sigma_low_sq", pr.sigma_low_sq);
    p->number("sigma_high_sq", pr.sigma_high_sq);
    p->boolean("classical_limit", pr.classical_limit);
    p->number("p", pr.p);
    p->integer("lattice_cap", pr.lattice_cap);
    if (auto co = p->child("coefficients")) {
      read_component(*co, "b", pr.b);
      read_component(*co, "h", pr.h);
      read_component(*co, "sigma", pr.sigma);
      co->finish();
    }
    read_component(*p, "loss", pr.loss);
    if (auto s = p->child("process")) {
      s->number("drift", pr.process.drift);
      s->number("scale", pr.process.scale);
      s->finish();
    }
    if (auto s = p->child("payoff")) {
      s->string("name", pr.payoff.name);
      s->number("strike", pr.payoff.strike);
      s->finish();
    }
    p->number("pde_dx", pr.pde_dx);
    p->finish();
  }

  if (auto s = root.child("solver")) {
    auto& so = c.solver;
    s->number("tol", so.tol);
    s->number("root_tol", so.root_tol);
    s->integer("max_iter", so.max_iter);
    s->number("contraction_guard", so.contraction_guard);
    s->number("delta_initial", so.delta_initial);
    s->integer("delta_min_steps", so.delta_min_steps);
    std::string method = method_name(so.method);
    s->string("sp_method", method);
    so.method = parse_method(method);
    s->number("initial_guess_offset", so.initial_guess_offset);
    s->finish();
  }

  if (auto s = root.child("outputs")) {
    s->string("csv", c.outputs.csv);
    s->string("report", c.outputs.report);
    s->finish();
  }

  if (auto s = root.child("checks")) {
    s->number("verify_tol", c.checks.verify_tol);
    if (const json* v = s->get("expected_A_terminal")) {
      if (v->is_null()) {
        c.checks.expected_A_terminal.reset();
      } else if (v->is_number()) {
        c.checks.expected_A_terminal = v->get<double>();
      } else {
        throw ConfigError("checks.expected_A_terminal must be a number or null");
      }
    }
    s->number("expected_tol", c.checks.expected_tol);
    s->number("probe_rel_tol", c.checks.probe_rel_tol);
    s->finish();
  }
  root.finish();

  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

std::string serialize_config(const ExperimentConfig& c) {
  const auto& pr = c.problem;
  const auto& so = c.solver;
  json j;
  j["mode"] = to_string(c.mode);
  j["problem"] = {
      {"x0", pr.x0},
      {"T", pr.horizon},
      {"n_steps", pr.n_steps},
      {"sigma_low_sq", pr.sigma_low_sq},
      {"sigma_high_sq", pr.sigma_high_sq},
      {"classical_limit", pr.classical_limit},
      {"p", pr.p},
      {"lattice_cap", pr.lattice_cap},
      {"coefficients", {{"b", component_json(pr.b)}, {"h", component_json(pr.h)}, {"sigma", component_json(pr.sigma)}}},
      {"loss", component_json(pr.loss)},
      {"process", {{"drift", pr.process.drift}, {"scale", pr.process.scale}}},
      {"payoff", {{"name", pr.payoff.name}, {"strike", pr.payoff.strike}}},
      {"pde_dx", pr.pde_dx},
  };
  j["solver"] = {
      {"tol", so.tol},
      {"root_tol", so.root_tol},
      {"max_iter", so.max_iter},
      {"contraction_guard", so.contraction_guard},
      {"delta_initial", so.delta_initial},
      {"delta_min_steps", so.delta_min_steps},
      {"sp_method", method_name(so.method)},
      {"initial_guess_offset", so.initial_guess_offset},
  };
  j["outputs"] = {{"csv", c.outputs.csv}, {"report", c.outputs.report}};
  j["checks"] = {
      {"verify_tol", c.checks.verify_tol},
      {"expected_A_terminal", c.checks.expected_A_terminal ? json(*c.checks.expected_A_terminal) : json(nullptr)},
      {"expected_tol", c.checks.expected_tol},
      {"probe_rel_tol", c.checks.probe_rel_tol},
  };
  return j.dump(2) + "\n";
}

void validate_config(const ExperimentConfig& c) {
  const auto& pr = c.problem;
  require(pr.sigma_low_sq <= pr.sigma_high_sq, "problem.sigma_low_sq = " + num(pr.sigma_low_sq) +
                                                   " exceeds problem.sigma_high_sq = " + num(pr.sigma_high_sq));
  require(pr.sigma_low_sq != pr.sigma_high_sq || pr.classical_limit,
          "problem.sigma_low_sq equals problem.sigma_high_sq; set problem.classical_limit to allow a degenerate band");
  rethrow_with("problem.sigma_low_sq/problem.sigma_high_sq",
               [&] { gexp::GParams::make(pr.sigma_low_sq, pr.sigma_high_sq, pr.classical_limit); });
  require(pr.horizon > 0.0, "problem.T must be positive");
  require(pr.lattice_cap >= 1 && pr.lattice_cap <= kMaxLatticeCap,
          "problem.lattice_cap must lie in [1, " + std::to_string(kMaxLatticeCap) + "]");
  require(pr.n_steps >= 1, "problem.n_steps must be at least 1");
  require(pr.n_steps <= pr.lattice_cap, "problem.n_steps = " + std::to_string(pr.n_steps) +
                                            " exceeds problem.lattice_cap = " + std::to_string(pr.lattice_cap) +
                                            " (the lattice has 4^n_steps leaves)");
  require(pr.p >= 1.0, "problem.p must be at least 1");
  require(pr.pde_dx > 0.0, "problem.pde_dx must be positive");

  static const std::vector<std::string> payoffs = {"abs", "call", "put", "square"};
  require(std::find(payoffs.begin(), payoffs.end(), pr.payoff.name) != payoffs.end(),
          "problem.payoff.name '" + pr.payoff.name + "' is unknown; available: abs, call, put, square");

  double kappa = 0.0;
  sde::Coefficients coeffs;
  rethrow_with("problem.coefficients.b", [&] {
    auto built = make_coefficient(pr.b.name, pr.b.params);
    coeffs.b = built.fn;
    kappa = std::max(kappa, built.lipschitz);
  });
  rethrow_with("problem.coefficients.h", [&] {
    auto built = make_coefficient(pr.h.name, pr.h.params);
    coeffs.h = built.fn;
    kappa = std::max(kappa, built.lipschitz);
  });
  rethrow_with("problem.coefficients.sigma", [&] {
    auto built = make_coefficient(pr.sigma.name, pr.sigma.params);
    coeffs.sigma = built.fn;
    kappa = std::max(kappa, built.lipschitz);
  });
  coeffs.kappa = kappa > 0.0 ? kappa : 1.0;
  rethrow_with("problem.coefficients", [&] { sde::validate_coefficients(coeffs, pr.horizon); });

  sp::LossSpec loss;
  rethrow_with("problem.loss", [&] {
    loss = make_loss(pr.loss.name, pr.loss.params, pr.horizon);
    sp::LossBox box;
    box.t_max = pr.horizon;
    sp::validate_loss(loss, box);
  });
  if (c.mode != Mode::GexpProbe) {
    const double l0 = loss.l(0.0, pr.x0);
    require(l0 >= 0.0, "problem.x0: initial constraint violated, l(0, x0) = " + num(l0) + " < 0 for loss '" +
                           pr.loss.name + "'");
  }

  const auto& so = c.solver;
  require(so.tol > 0.0, "solver.tol must be positive");
  require(so.root_tol > 0.0, "solver.root_tol must be positive");
  require(so.max_iter >= 1, "solver.max_iter must be at least 1");
  require(so.contraction_guard > 0.0 && so.contraction_guard < 1.0, "solver.contraction_guard must lie in (0, 1)");
  require(so.delta_initial >= 0.0, "solver.delta_initial must be nonnegative (0 selects T)");
  require(so.delta_min_steps >= 1, "solver.delta_min_steps must be at least 1");

  require(c.checks.verify_tol > 0.0, "checks.verify_tol must be positive");
  require(c.checks.expected_tol > 0.0, "checks.expected_tol must be positive");
  require(c.checks.probe_rel_tol > 0.0, "checks.probe_rel_tol must be positive");
  if (c.checks.expected_A_terminal) {
    require(std::isfinite(*c.checks.expected_A_terminal), "checks.expected_A_terminal must be finite");
  }
}

sde::MRGSDEProblem build_problem(const ExperimentConfig& c) {
  const auto& pr = c.problem;
  sde::MRGSDEProblem problem;
  problem.x0 = pr.x0;
  double kappa = 0.0;
  const auto b = make_coefficient(pr.b.name, pr.b.params);
  const auto h = make_coefficient(pr.h.name, pr.h.params);
  const auto sigma = make_coefficient(pr.sigma.name, pr.sigma.params);
  problem.coeffs.b = b.fn;
  problem.coeffs.h = h.fn;
  problem.coeffs.sigma = sigma.fn;
  kappa = std::max({b.lipschitz, h.lipschitz, sigma.lipschitz});
  problem.coeffs.kappa = kappa > 0.0 ? kappa : 1.0;
  problem.loss = make_loss(pr.loss.name, pr.loss.params, pr.horizon);
  problem.params = gexp::GParams::make(pr.sigma_low_sq, pr.sigma_high_sq, pr.classical_limit);
  problem.grid = gexp::TimeGrid(pr.horizon, pr.n_steps);
  problem.p = pr.p;
  problem.enumeration_cap = pr.lattice_cap;
  return problem;
}

}  // namespace gmr::harness
