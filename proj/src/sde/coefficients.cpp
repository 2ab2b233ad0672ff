#include "gmr/sde/coefficients.hpp"

#include <cmath>
#include <sstream>

#include "gmr/errors.hpp"

namespace gmr::sde {
namespace {

void check_one(const CoefficientFn& c, const char* slot, double kappa, double horizon, double x_min, double x_max,
               int nt, int nx) {
  if (!c.f) throw PreconditionError(std::string("coefficient ") + slot + " is empty");
  for (int i = 0; i < nt; ++i) {
    const double t = nt <= 1 ? 0.0 : horizon * i / (nt - 1);
    double prev = c.f(t, x_min);
    for (int j = 1; j < nx; ++j) {
      const double x0 = x_min + (x_max - x_min) * (j - 1) / (nx - 1);
      const double x1 = x_min + (x_max - x_min) * j / (nx - 1);
      const double v = c.f(t, x1);
      if (std::abs(v - prev) > kappa * (x1 - x0) * (1.0 + 1e-9) + 1e-12 * (1.0 + std::abs(v))) {
        std::ostringstream msg;
        msg << "coefficient " << slot << " ('" << c.name << "') exceeds Lipschitz constant kappa = " << kappa
            << " near (t, x) = (" << t << ", " << x0 << ")";
        throw PreconditionError(msg.str());
      }
      if (!c.depends_on_x && v != prev) {
        throw PreconditionError(std::string("coefficient ") + slot + " ('" + c.name +
                                "') is declared x-independent but varies in x");
      }
      prev = v;
    }
  }
}

}  // namespace

void validate_coefficients(const Coefficients& coeffs, double horizon, double x_min, double x_max, int nt, int nx) {
  if (!(coeffs.kappa > 0.0)) throw PreconditionError("Lipschitz constant kappa must be positive");
  check_one(coeffs.b, "b", coeffs.kappa, horizon, x_min, x_max, nt, nx);
  check_one(coeffs.h, "h", coeffs.kappa, horizon, x_min, x_max, nt, nx);
  check_one(coeffs.sigma, "sigma", coeffs.kappa, horizon, x_min, x_max, nt, nx);
}

void MRGSDEProblem::validate() const {
  params.validate();
  if (!(p >= 1.0)) throw PreconditionError("moment order p must be at least 1");
  if (!loss.l) throw PreconditionError("problem has no loss function");
  const double l0 = loss.l(0.0, x0);
  if (l0 < 0.0) {
    std::ostringstream msg;
    msg << "initial constraint violated: l(0, x0) = " << l0 << " < 0";
    throw PreconditionError(msg.str());
  }
}

}  // namespace gmr::sde
