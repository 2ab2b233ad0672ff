#pragma once

#include "gmr/gexp/lattice.hpp"
#include "gmr/sde/coefficients.hpp"
#include "gmr/sde/picard.hpp"

namespace gmr::sde {

/// E[sup_t |X_t|^p] against
/// 1 + |x0|^p + int |b(s,0)|^p ds + int |h(s,0)|^p ds + (int |sigma(s,0)|^2 ds)^{p/2}.
/// The constant in front is not explicit, so only the ratio is reported.
struct MomentDiagnostics {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

MomentDiagnostics check_moment_estimate(const MRGSDESolution& solution, const MRGSDEProblem& problem,
                                        const gexp::PathLattice& lattice);

/// Smallest C with |A_t - A_s| <= C (|t-s|^{1/2} + F(|t-s|)) over grid pairs.
struct AModulusFit {
  double fitted_C = 0.0;
  int worst_s = 0;
  int worst_t = 0;
};

AModulusFit check_A_modulus(const MRGSDESolution& solution, const MRGSDEProblem& problem);

/// max_k (A_{k+1} - A_k) / dt. Requires problem.loss.smooth.
struct ALipschitzDiagnostics {
  double ratio = 0.0;
  int worst_step = 0;
};

ALipschitzDiagnostics check_A_lipschitz(const MRGSDESolution& solution, const MRGSDEProblem& problem);

}  // namespace gmr::sde
