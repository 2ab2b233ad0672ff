#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gmr/errors.hpp"
#include "gmr/gexp/functional.hpp"
#include "gmr/gexp/lattice.hpp"
#include "gmr/kernels/kernels.hpp"

namespace gmr::gexp {

/// Upper expectation: the exact maximum, over all adapted volatility
/// policies, of the policy's expectation of xi. Computed by backward
/// induction V = max_vol 1/2 [V(vol,+) + V(vol,-)].
double sup_expectation(const PathLattice& lattice, const PathFunctional& xi);

/// -sup_expectation(-xi).
double inf_expectation(const PathLattice& lattice, const PathFunctional& xi);

/// Dynamic-programming values at depth `step`; step == xi.depth returns xi.
NodeValues conditional_sup_expectation(const PathLattice& lattice, const PathFunctional& xi, int step);

/// sup over policies of P(event); the event must be {0,1}-valued.
double capacity_V(const PathLattice& lattice, const PathFunctional& event);
/// inf over policies of P(event).
double capacity_v(const PathLattice& lattice, const PathFunctional& event);

struct ComparisonReport {
  double e_xi = 0.0;
  double e_eta = 0.0;
  double lower_capacity_strict = 0.0;  // v(xi < eta)
  double upper_capacity_strict = 0.0;  // V(xi < eta)
  bool implication_i = true;           // v(xi<eta) > 0  =>  E[xi] < E[eta]
  bool implication_ii = true;          // E[xi] < E[eta] =>  V(xi<eta) > 0
  bool holds() const { return implication_i && implication_ii; }
};

/// Evaluates both strict-comparison implications. Requires xi <= eta
/// node-wise (PreconditionError otherwise).
ComparisonReport strict_comparison_check(const PathLattice& lattice, const PathFunctional& xi,
                                         const PathFunctional& eta);

/// Upper expectation of f(X) where X is the depth-k level `values`
/// (4^k entries). This is the hot path of every root search in the library:
/// f is applied inside the first reduction, so no mapped copy is stored.
template <class F>
double sup_expectation_of(std::span<const double> values, F&& f) {
  const int depth = depth_for_size(values.size());
  if (depth < 0) throw PreconditionError("level size is not a power of four");
  if (depth == 0) return f(values[0]);

  thread_local std::vector<double> front;
  thread_local std::vector<double> back;
  front.resize(nodes_at(depth - 1));
  kernels::parallel::reduce_sup_mapped(values, f, std::span<double>(front.data(), nodes_at(depth - 1)));
  for (int k = depth - 2; k >= 0; --k) {
    back.resize(std::max(back.size(), nodes_at(k)));
    kernels::parallel::reduce_sup(std::span<const double>(front.data(), nodes_at(k + 1)),
                                  std::span<double>(back.data(), nodes_at(k)));
    front.swap(back);
  }
  return front[0];
}

/// Upper expectation of the level itself.
double sup_expectation_of(std::span<const double> values);

}  // namespace gmr::gexp
