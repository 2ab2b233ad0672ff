#pragma once

#include <vector>

#include "gmr/gexp/lattice.hpp"
#include "gmr/sde/coefficients.hpp"
#include "gmr/sp/process.hpp"
#include "gmr/sp/skorokhod.hpp"

namespace gmr::sde {

struct PicardConfig {
  /// Stop when the sup-distance between successive iterates is <= tol.
  double tol = 1e-10;
  /// Root tolerance inside each Skorokhod solve. Kept well below tol so the
  /// bisection grain does not masquerade as a contraction failure.
  double root_tol = 1e-12;
  /// Maximum applications of Gamma per subinterval.
  int max_iter = 100;
  /// An observed ratio d_{i+1}/d_i at or above this halves delta.
  double contraction_guard = 0.5;
  /// Initial subinterval length in time units; <= 0 selects the horizon.
  double delta_initial = 0.0;
  /// Smallest subinterval, in grid steps, the halving rule may reach.
  int delta_min_steps = 1;
  sp::SpMethod method = sp::SpMethod::Operator;
  /// Initial guess is the constant x0 + initial_guess_offset.
  double initial_guess_offset = 0.0;

  friend bool operator==(const PicardConfig&, const PicardConfig&) = default;
};

struct Subinterval {
  int start_step = 0;
  int end_step = 0;
  std::vector<double> initial;  // depth start_step values
};

struct SubintervalDiagnostics {
  int start_step = 0;
  int end_step = 0;
  int gamma_applications = 0;
  /// Applications before the fixed point was reached (excludes the
  /// confirming pass).
  int iterations = 0;
  std::vector<double> distances;
  std::vector<double> ratios;
  int restarts = 0;  // delta halvings spent on this subinterval
};

struct MRGSDESolution {
  sp::ProcessOnLattice X;
  sp::ProcessOnLattice U;  // unreflected part, X - A
  sp::DeterministicPath A;
  std::vector<SubintervalDiagnostics> subintervals;
  int delta_steps = 0;         // settled subinterval length
  double junction_gap = 0.0;   // max |A| jump introduced at subinterval joins
};

/// Gamma: integrate forward along U on the subinterval, then reflect.
/// Returns X and the local compensator (starting at 0 on start_step).
sp::SkorokhodSolution gamma_map(const MRGSDEProblem& problem, const sp::ProcessOnLattice& U,
                                const gexp::PathLattice& lattice, const Subinterval& sub,
                                double root_tol = 1e-12, sp::SpMethod method = sp::SpMethod::Operator);

/// Picard iteration of Gamma on consecutive subintervals with delta halving
/// on observed non-contraction; compensators are pasted additively.
/// Throws SolverError on non-contraction at the minimum delta or when
/// max_iter is exhausted.
MRGSDESolution picard_solve(const MRGSDEProblem& problem, const gexp::PathLattice& lattice,
                            const PicardConfig& config = {});
MRGSDESolution picard_solve(const MRGSDEProblem& problem, const PicardConfig& config = {});

}  // namespace gmr::sde
