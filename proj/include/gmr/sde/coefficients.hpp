#pragma once

#include <functional>
#include <string>

#include "gmr/gexp/lattice.hpp"
#include "gmr/gexp/params.hpp"
#include "gmr/sp/loss.hpp"

namespace gmr::sde {

/// Deterministic coefficient f(t, x).
struct CoefficientFn {
  std::string name = "zero";
  std::function<double(double t, double x)> f = [](double, double) { return 0.0; };
  /// False when f does not depend on x; Picard iteration then needs a
  /// single update.
  bool depends_on_x = false;

  double operator()(double t, double x) const { return f(t, x); }
};

/// Drift b, d<B> coefficient h and diffusion sigma with a shared Lipschitz
/// constant kappa in x.
struct Coefficients {
  CoefficientFn b;
  CoefficientFn h;
  CoefficientFn sigma;
  double kappa = 1.0;

  bool x_independent() const { return !b.depends_on_x && !h.depends_on_x && !sigma.depends_on_x; }
};

/// Spot-checks |f(t,x) - f(t,x')| <= kappa |x - x'| on a t-x sample grid for
/// each coefficient. Throws PreconditionError on violation.
void validate_coefficients(const Coefficients& coeffs, double horizon, double x_min = -10.0, double x_max = 10.0,
                           int nt = 20, int nx = 200);

struct MRGSDEProblem {
  double x0 = 0.0;
  Coefficients coeffs;
  sp::LossSpec loss;
  gexp::GParams params;
  gexp::TimeGrid grid;
  double p = 2.0;
  int enumeration_cap = gexp::kDefaultEnumerationCap;

  /// Requires l(0, x0) >= 0, p >= 1 and a valid volatility band.
  void validate() const;
};

}  // namespace gmr::sde
