#include "gmr/harness/registry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "gmr/errors.hpp"

namespace gmr::harness {
namespace {

struct CoefficientEntry {
  ParamMap defaults;
  std::function<BuiltCoefficient(const ParamMap&)> build;
};

struct LossEntry {
  ParamMap defaults;
  std::function<sp::LossSpec(const ParamMap&, double horizon)> build;
};

const std::map<std::string, CoefficientEntry>& coefficient_table() {
  static const std::map<std::string, CoefficientEntry> table = {
      {"zero",
       {{},
        [](const ParamMap&) {
          return BuiltCoefficient{{"zero", [](double, double) { return 0.0; }, false}, 0.0};
        }}},
      {"constant_drift",
       {{{"value", 1.0}},
        [](const ParamMap& p) {
          const double v = p.at("value");
          return BuiltCoefficient{{"constant_drift", [v](double, double) { return v; }, false}, 0.0};
        }}},
      {"ou_drift",
       {{{"theta", 1.0}, {"mu", 0.0}},
        [](const ParamMap& p) {
          const double theta = p.at("theta");
          const double mu = p.at("mu");
          return BuiltCoefficient{
              {"ou_drift", [theta, mu](double, double x) { return theta * (mu - x); }, theta != 0.0},
              std::abs(theta)};
        }}},
      {"constant_sigma",
       {{{"value", 1.0}},
        [](const ParamMap& p) {
          const double v = p.at("value");
          return BuiltCoefficient{{"constant_sigma", [v](double, double) { return v; }, false}, 0.0};
        }}},
      {"linear_sigma",
       {{{"a", 1.0}, {"b", 0.5}, {"cap", 2.0}},
        [](const ParamMap& p) {
          const double a = p.at("a");
          const double b = p.at("b");
          const double cap = p.at("cap");
          if (cap < a) throw ConfigError("linear_sigma: cap must be at least a");
          return BuiltCoefficient{
              {"linear_sigma", [a, b, cap](double, double x) { return std::min(a + b * std::abs(x), cap); },
               b != 0.0 && cap > a},
              std::abs(b)};
        }}},
  };
  return table;
}

// Every loss is x-shaped minus an affine offset c(t) = c0 + c1 t.
sp::LossSpec offset_loss(std::string name, std::function<double(double)> shape, double c_l, double C_l,
                         double shape_growth, bool smooth, const ParamMap& p, double horizon) {
  const double c0 = p.at("c0");
  const double c1 = p.at("c1");
  sp::LossSpec loss;
  loss.name = std::move(name);
  loss.l = [shape, c0, c1](double t, double x) { return shape(x) - (c0 + c1 * t); };
  loss.c_l = c_l;
  loss.C_l = C_l;
  const double k = std::abs(c1);
  loss.F = [k](double delta) { return k * std::abs(delta); };
  loss.kappa_growth = shape_growth + std::abs(c0) + std::abs(c1) * std::max(1.0, horizon);
  loss.smooth = smooth;
  return loss;
}

const std::map<std::string, LossEntry>& loss_table() {
  static const std::map<std::string, LossEntry> table = {
      {"linear",
       {{{"c0", 0.0}, {"c1", 1.0}},
        [](const ParamMap& p, double horizon) {
          return offset_loss("linear", [](double x) { return x; }, 1.0, 1.0, 1.0, true, p, horizon);
        }}},
      {"arctan_shift",
       {{{"c0", 0.0}, {"c1", 1.0}},
        [](const ParamMap& p, double horizon) {
          // d/dx (2x + atan x) = 2 + 1/(1+x^2) lies in (2, 3].
          return offset_loss(
              "arctan_shift", [](double x) { return 2.0 * x + std::atan(x); }, 2.0, 3.0, 3.0, false, p, horizon);
        }}},
      {"smooth_sin",
       {{{"c0", 0.0}, {"c1", 1.0}},
        [](const ParamMap& p, double horizon) {
          return offset_loss(
              "smooth_sin", [](double x) { return x + 0.1 * std::sin(x); }, 0.9, 1.1, 1.1, true, p, horizon);
        }}},
  };
  return table;
}

template <class Table>
std::vector<std::string> names_of(const Table& table) {
  std::vector<std::string> out;
  for (const auto& [name, entry] : table) out.push_back(name);
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

template <class Table>
const typename Table::mapped_type& lookup(const Table& table, const std::string& kind, const std::string& name) {
  const auto it = table.find(name);
  if (it == table.end()) {
    throw ConfigError("unknown " + kind + " '" + name + "'; available: " + join(names_of(table)));
  }
  return it->second;
}

ParamMap merge(const ParamMap& defaults, const ParamMap& given, const std::string& name) {
  ParamMap out = defaults;
  for (const auto& [key, value] : given) {
    if (!defaults.contains(key)) {
      std::vector<std::string> keys;
      for (const auto& [k, v] : defaults) keys.push_back(k);
      throw ConfigError("'" + name + "' has no parameter '" + key + "'; accepted: " +
                        (keys.empty() ? std::string("none") : join(keys)));
    }
    if (!std::isfinite(value)) throw ConfigError("'" + name + "' parameter '" + key + "' must be finite");
    out[key] = value;
  }
  return out;
}

}  // namespace

std::vector<std::string> coefficient_names() { return names_of(coefficient_table()); }
std::vector<std::string> loss_names() { return names_of(loss_table()); }

ParamMap coefficient_defaults(const std::string& name) {
  return lookup(coefficient_table(), "coefficient", name).defaults;
}

ParamMap loss_defaults(const std::string& name) { return lookup(loss_table(), "loss", name).defaults; }

BuiltCoefficient make_coefficient(const std::string& name, const ParamMap& params) {
  const auto& entry = lookup(coefficient_table(), "coefficient", name);
  return entry.build(merge(entry.defaults, params, name));
}

sp::LossSpec make_loss(const std::string& name, const ParamMap& params, double horizon) {
  const auto& entry = lookup(loss_table(), "loss", name);
  return entry.build(merge(entry.defaults, params, name), horizon);
}

RegistryListing registry_list() { return {coefficient_names(), loss_names()}; }

}  // namespace gmr::harness
