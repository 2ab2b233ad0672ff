#pragma once

#include "gmr/gexp/functional.hpp"
#include "gmr/gexp/lattice.hpp"
#include "gmr/sp/loss.hpp"

namespace gmr::sp {

inline constexpr double kDefaultRootTol = 1e-10;

/// x -> E[l(t, x + X)] for X at depth dist.depth.
double shifted_loss_expectation(double t, double x, const gexp::PathFunctional& dist, const LossSpec& loss);

/// L_t(X) = inf{x >= 0 : E[l(t, x + X)] >= 0}, to absolute tolerance tol in
/// x: the smallest point of the grid 2^floor(log2 tol) * Z satisfying the
/// constraint, so the result is monotone in X without slack. Throws
/// BracketError if the slope bound c_l fails to produce a bracket.
double loss_L(double t, const gexp::PathFunctional& dist, const gexp::PathLattice& lattice, const LossSpec& loss,
              double tol = kDefaultRootTol);

/// Signed variant inf{x in R : E[l(t, x + X)] >= 0}; loss_L = max(0, .).
double loss_L_signed(double t, const gexp::PathFunctional& dist, const gexp::PathLattice& lattice,
                     const LossSpec& loss, double tol = kDefaultRootTol);

/// Static risk measure rho_t(X) = inf{x : E[l(t, x + X)] >= 0}: the cash
/// needed to make the position X acceptable at time t.
double rho(double t, const gexp::PathFunctional& dist, const gexp::PathLattice& lattice, const LossSpec& loss,
           double tol = kDefaultRootTol);

/// H(t, z, Y) = E[l(t, Y - E[Y] + z)].
double map_H(double t, double z, const gexp::PathFunctional& Y, const gexp::PathLattice& lattice,
             const LossSpec& loss);

/// The z-bar with H(t, z-bar, Y) = z, found by bisection from the slope
/// bracket [(z - H(t,0,Y)) / C_l, (z - H(t,0,Y)) / c_l].
double map_H_inverse(double t, double z, const gexp::PathFunctional& Y, const gexp::PathLattice& lattice,
                     const LossSpec& loss, double tol = kDefaultRootTol);

}  // namespace gmr::sp
