#include "gmr/gexp/expectation.hpp"

#include <string>

namespace gmr::gexp {
namespace {

// Runs the backward recursion from xi.depth down to `stop`, returning the
// values at depth `stop`. `sup` selects the max or min combination.
std::vector<double> backward(const PathFunctional& xi, int stop, bool sup) {
  std::vector<double> current = xi.values;
  for (int k = xi.depth - 1; k >= stop; --k) {
    std::vector<double> next(nodes_at(k));
    if (sup) {
      kernels::parallel::reduce_sup(current, next);
    } else {
      kernels::parallel::reduce_inf(current, next);
    }
    current.swap(next);
  }
  return current;
}

void check_indicator(const PathFunctional& event) {
  for (double v : event.values) {
    if (v != 0.0 && v != 1.0) throw PreconditionError("capacity requires a {0,1}-valued event");
  }
}

}  // namespace

double sup_expectation_of(std::span<const double> values) {
  return sup_expectation_of(values, [](double v) { return v; });
}

double sup_expectation(const PathLattice& lattice, const PathFunctional& xi) {
  check_functional(lattice, xi);
  return sup_expectation_of(xi.values);
}

double inf_expectation(const PathLattice& lattice, const PathFunctional& xi) {
  check_functional(lattice, xi);
  // min over vol of the sign averages is -sup(-xi) bit for bit, since
  // negation commutes exactly with addition, halving and max.
  return backward(xi, 0, false)[0];
}

NodeValues conditional_sup_expectation(const PathLattice& lattice, const PathFunctional& xi, int step) {
  check_functional(lattice, xi);
  if (step < 0 || step > xi.depth) {
    throw PreconditionError("conditioning step " + std::to_string(step) + " outside [0, " +
                            std::to_string(xi.depth) + "]");
  }
  return {step, backward(xi, step, true)};
}

double capacity_V(const PathLattice& lattice, const PathFunctional& event) {
  check_functional(lattice, event);
  check_indicator(event);
  return sup_expectation(lattice, event);
}

double capacity_v(const PathLattice& lattice, const PathFunctional& event) {
  check_functional(lattice, event);
  check_indicator(event);
  return inf_expectation(lattice, event);
}

ComparisonReport strict_comparison_check(const PathLattice& lattice, const PathFunctional& xi,
                                         const PathFunctional& eta) {
  check_functional(lattice, xi);
  check_functional(lattice, eta);
  const int depth = xi.depth > eta.depth ? xi.depth : eta.depth;
  const PathFunctional a = lift(xi, depth);
  const PathFunctional b = lift(eta, depth);
  PathFunctional strict{depth, std::vector<double>(a.values.size())};
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (a.values[i] > b.values[i]) throw PreconditionError("strict comparison requires xi <= eta node-wise");
    strict.values[i] = a.values[i] < b.values[i] ? 1.0 : 0.0;
  }

  ComparisonReport r;
  r.e_xi = sup_expectation(lattice, a);
  r.e_eta = sup_expectation(lattice, b);
  r.lower_capacity_strict = capacity_v(lattice, strict);
  r.upper_capacity_strict = capacity_V(lattice, strict);
  r.implication_i = !(r.lower_capacity_strict > 0.0) || r.e_xi < r.e_eta;
  r.implication_ii = !(r.e_xi < r.e_eta) || r.upper_capacity_strict > 0.0;
  return r;
}

}  // namespace gmr::gexp
