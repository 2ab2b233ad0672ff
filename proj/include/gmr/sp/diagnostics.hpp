#pragma once

#include <functional>

#include "gmr/gexp/lattice.hpp"
#include "gmr/sp/loss.hpp"
#include "gmr/sp/process.hpp"
#include "gmr/sp/skorokhod.hpp"

namespace gmr::sp {

/// Both sides of
///   sup_t |A1 - A2| <= (1/c_l) sup_t sup_x |l1 - l2|
///                      + (1 + 2 C_l / c_l) sup_t E|S1 - S2|.
struct StabilityDiagnostics {
  double lhs = 0.0;
  double rhs = 0.0;
  double loss_term = 0.0;
  double process_term = 0.0;
  double c_l = 0.0;
  double C_l = 0.0;
  bool holds = false;
};

/// c_l and C_l are taken as the weaker of the two losses' declarations.
/// `sup_loss_gap(t)` supplies sup_x |l1(t,x) - l2(t,x)| exactly.
StabilityDiagnostics stability_gap(const SkorokhodSolution& sol1, const SkorokhodSolution& sol2,
                                   const LossSpec& loss1, const LossSpec& loss2, const ProcessOnLattice& S1,
                                   const ProcessOnLattice& S2, const gexp::PathLattice& lattice,
                                   const std::function<double(double)>& sup_loss_gap, double slack = 1e-8);

/// Modulus of the compensator over all grid pairs s < t:
///   |A_t - A_s| <= (1 + 2 C_l/c_l) sup_{r in [s,t]} E|S_r - S_s| + F(t - s)/c_l.
struct ModulusDiagnostics {
  double worst_excess = 0.0;  // max over pairs of lhs - rhs
  int worst_s = 0;
  int worst_t = 0;
  bool holds = false;
};

ModulusDiagnostics sp_modulus_check(const SkorokhodSolution& solution, const LossSpec& loss,
                                    const ProcessOnLattice& S, const gexp::PathLattice& lattice,
                                    double slack = 1e-8);

}  // namespace gmr::sp
