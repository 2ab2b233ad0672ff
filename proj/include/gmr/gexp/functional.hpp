#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gmr/gexp/lattice.hpp"

namespace gmr::gexp {

/// A random variable on the lattice that depends on the first `depth` steps
/// only: one value per depth-`depth` node.
struct PathFunctional {
  int depth = 0;
  std::vector<double> values;
};

/// Conditional expectation values at one depth.
struct NodeValues {
  int depth = 0;
  std::vector<double> values;

  PathFunctional as_functional() const { return {depth, values}; }
};

/// Throws PreconditionError unless xi has exactly 4^depth values and fits in
/// the lattice.
void check_functional(const PathLattice& lattice, const PathFunctional& xi);

PathFunctional constant_functional(int depth, double value);

/// f(B, QV) evaluated at every depth-`depth` node.
template <class F>
PathFunctional terminal_functional(const PathLattice& lattice, int depth, F&& f) {
  const auto b = lattice.B(depth);
  const auto qv = lattice.QV(depth);
  PathFunctional out{depth, std::vector<double>(b.size())};
  for (std::size_t i = 0; i < b.size(); ++i) out.values[i] = f(b[i], qv[i]);
  return out;
}

/// Path-dependent builder. The callback receives the values of B and QV at
/// depths 0..depth along the path ending at each node.
using PathCallback = std::function<double(std::span<const double> b_path, std::span<const double> qv_path)>;
PathFunctional path_functional(const PathLattice& lattice, int depth, const PathCallback& f);

/// Node-wise transforms.
template <class F>
PathFunctional transform(const PathFunctional& xi, F&& f) {
  PathFunctional out{xi.depth, std::vector<double>(xi.values.size())};
  for (std::size_t i = 0; i < xi.values.size(); ++i) out.values[i] = f(xi.values[i]);
  return out;
}

/// Combines two functionals, lifting the shallower one to the deeper depth.
template <class F>
PathFunctional combine(const PathFunctional& a, const PathFunctional& b, F&& f) {
  const int depth = a.depth > b.depth ? a.depth : b.depth;
  PathFunctional out{depth, std::vector<double>(nodes_at(depth))};
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = f(a.values[ancestor_of(i, depth, a.depth)], b.values[ancestor_of(i, depth, b.depth)]);
  }
  return out;
}

/// Re-expresses xi at a deeper depth (values constant on descendants).
PathFunctional lift(const PathFunctional& xi, int depth);

}  // namespace gmr::gexp
