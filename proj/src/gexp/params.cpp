#include "gmr/gexp/params.hpp"

#include <cmath>
#include <sstream>

#include "gmr/errors.hpp"

namespace gmr::gexp {

GParams GParams::make(double sigma_low_sq, double sigma_high_sq, bool classical_limit) {
  GParams p{sigma_low_sq, sigma_high_sq, classical_limit};
  p.validate();
  return p;
}

void GParams::validate() const {
  std::ostringstream msg;
  if (!(std::isfinite(sigma_low_sq) && std::isfinite(sigma_high_sq))) {
    msg << "volatility band must be finite";
  } else if (!(sigma_low_sq > 0.0)) {
    msg << "sigma_low_sq must be positive (got " << sigma_low_sq << ")";
  } else if (sigma_low_sq > sigma_high_sq) {
    msg << "sigma_low_sq (" << sigma_low_sq << ") exceeds sigma_high_sq (" << sigma_high_sq << ")";
  } else if (sigma_low_sq == sigma_high_sq && !classical_limit) {
    msg << "sigma_low_sq == sigma_high_sq requires classical_limit mode";
  } else {
    return;
  }
  throw PreconditionError(msg.str());
}

double g_function(double a, const GParams& params) {
  const double pos = a > 0.0 ? a : 0.0;
  const double neg = a < 0.0 ? -a : 0.0;
  return 0.5 * (params.sigma_high_sq * pos - params.sigma_low_sq * neg);
}

TimeGrid::TimeGrid(double horizon, int n_steps) : horizon_(horizon), n_steps_(n_steps) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw PreconditionError("time horizon must be positive");
  if (n_steps < 0) throw PreconditionError("n_steps must be nonnegative");
  dt_ = n_steps > 0 ? horizon / n_steps : 0.0;
}

double TimeGrid::time(int k) const {
  if (k < 0 || k > n_steps_) throw PreconditionError("grid index out of range");
  return k == n_steps_ ? horizon_ : k * dt_;
}

}  // namespace gmr::gexp
