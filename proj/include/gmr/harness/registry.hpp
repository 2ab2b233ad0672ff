#pragma once

#include <map>
#include <string>
#include <vector>

#include "gmr/sde/coefficients.hpp"
#include "gmr/sp/loss.hpp"

namespace gmr::harness {

using ParamMap = std::map<std::string, double>;

/// A registry entry applied to its parameters.
struct BuiltCoefficient {
  sde::CoefficientFn fn;
  double lipschitz = 0.0;  // in x
};

/// Names sorted ascending.
std::vector<std::string> coefficient_names();
std::vector<std::string> loss_names();

/// Declared parameters with their defaults. Throws ConfigError on an unknown
/// name (the message lists the available ones).
ParamMap coefficient_defaults(const std::string& name);
ParamMap loss_defaults(const std::string& name);

/// Unset parameters take their defaults; unknown parameter keys and unknown
/// names throw ConfigError.
BuiltCoefficient make_coefficient(const std::string& name, const ParamMap& params);

/// `horizon` fixes the growth constant of time-dependent offsets.
sp::LossSpec make_loss(const std::string& name, const ParamMap& params, double horizon = 1.0);

struct RegistryListing {
  std::vector<std::string> coefficients;
  std::vector<std::string> losses;
};

RegistryListing registry_list();

}  // namespace gmr::harness
