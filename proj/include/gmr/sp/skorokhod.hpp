#pragma once

#include <utility>

#include "gmr/gexp/lattice.hpp"
#include "gmr/sp/loss.hpp"
#include "gmr/sp/operators.hpp"
#include "gmr/sp/process.hpp"

namespace gmr::sp {

/// (X, A) with X = S + A node-wise and A a deterministic nondecreasing
/// compensator starting at 0 on the first step of S.
struct SkorokhodSolution {
  ProcessOnLattice X;
  DeterministicPath A;
};

struct DeterministicSkorokhodResult {
  DeterministicPath x;
  DeterministicPath A;
};

/// Classical Skorokhod map for x = s + A >= barrier with A increasing only
/// on {x = barrier}: A_t = sup_{u <= t} (s_u - barrier_u)^-.
DeterministicSkorokhodResult deterministic_skorokhod(const DeterministicPath& s, const DeterministicPath& barrier);

enum class SpMethod { Operator, Reduction };

/// First construction: A_t = max over grid times u <= t of L_u(S_u).
SkorokhodSolution solve_sp_operator(const LossSpec& loss, const ProcessOnLattice& S,
                                    const gexp::PathLattice& lattice, double tol = kDefaultRootTol);

/// Second construction: reduce to the deterministic Skorokhod problem with
/// s_t = E[S_t] and barrier H^{-1}(t, 0, S_t).
SkorokhodSolution solve_sp_reduction(const LossSpec& loss, const ProcessOnLattice& S,
                                     const gexp::PathLattice& lattice, double tol = kDefaultRootTol);

SkorokhodSolution solve_sp(SpMethod method, const LossSpec& loss, const ProcessOnLattice& S,
                           const gexp::PathLattice& lattice, double tol = kDefaultRootTol);

struct VerificationReport {
  double identity_residual = 0.0;  // max |X - S - A|
  double constraint_min = 0.0;     // min_k E[l(t_k, X_k)]
  double flatoff_residual = 0.0;   // sum_k E[l(t_{k+1}, X_{k+1})] (A_{k+1} - A_k)
  bool compensator_admissible = true;  // A(first) = 0 and nondecreasing
  bool pass = false;
};

/// Checks the three defining conditions on the grid. pass requires
/// identity_residual <= 1e-12, constraint_min >= -tol and
/// flatoff_residual <= tol (A_last - A_first + 1).
VerificationReport verify_sp(const SkorokhodSolution& solution, const LossSpec& loss, const ProcessOnLattice& S,
                             const gexp::PathLattice& lattice, double tol);

}  // namespace gmr::sp
