#include "gmr/gexp/functional.hpp"

#include <string>

#include "gmr/errors.hpp"

namespace gmr::gexp {

void check_functional(const PathLattice& lattice, const PathFunctional& xi) {
  if (xi.depth < 0 || xi.depth > lattice.depth()) {
    throw PreconditionError("functional depth " + std::to_string(xi.depth) + " outside lattice depth " +
                            std::to_string(lattice.depth()));
  }
  if (xi.values.size() != nodes_at(xi.depth)) {
    throw PreconditionError("functional at depth " + std::to_string(xi.depth) + " has " +
                            std::to_string(xi.values.size()) + " values, expected 4^depth");
  }
}

PathFunctional constant_functional(int depth, double value) {
  return {depth, std::vector<double>(nodes_at(depth), value)};
}

PathFunctional path_functional(const PathLattice& lattice, int depth, const PathCallback& f) {
  if (depth < 0 || depth > lattice.depth()) throw PreconditionError("path functional depth outside lattice");
  PathFunctional out{depth, std::vector<double>(nodes_at(depth))};
  std::vector<double> b_path(depth + 1);
  std::vector<double> qv_path(depth + 1);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    for (int j = 0; j <= depth; ++j) {
      const std::size_t a = ancestor_of(i, depth, j);
      b_path[j] = lattice.B(j)[a];
      qv_path[j] = lattice.QV(j)[a];
    }
    out.values[i] = f(b_path, qv_path);
  }
  return out;
}

PathFunctional lift(const PathFunctional& xi, int depth) {
  if (depth < xi.depth) throw PreconditionError("cannot lift a functional to a shallower depth");
  PathFunctional out{depth, std::vector<double>(nodes_at(depth))};
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = xi.values[ancestor_of(i, depth, xi.depth)];
  return out;
}

}  // namespace gmr::gexp
