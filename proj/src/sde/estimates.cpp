#include "gmr/sde/estimates.hpp"

#include <algorithm>
#include <cmath>

#include "gmr/errors.hpp"
#include "gmr/gexp/expectation.hpp"

namespace gmr::sde {

MomentDiagnostics check_moment_estimate(const MRGSDESolution& solution, const MRGSDEProblem& problem,
                                        const gexp::PathLattice& lattice) {
  const int n = problem.grid.n_steps();
  const double p = problem.p;
  const double dt = problem.grid.dt();
  if (solution.X.first_step() != 0 || solution.X.last_step() != n || lattice.depth() < n) {
    throw PreconditionError("moment check needs a full-horizon solution on a matching lattice");
  }

  // Running maximum of |X|^p carried down the tree.
  std::vector<double> running{std::pow(std::abs(solution.X.at(0)[0]), p)};
  for (int k = 1; k <= n; ++k) {
    const auto x = solution.X.at(k);
    std::vector<double> next(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      next[i] = std::max(running[gexp::parent_of(i)], std::pow(std::abs(x[i]), p));
    }
    running.swap(next);
  }

  MomentDiagnostics d;
  d.lhs = gexp::sup_expectation_of(running);

  double int_b = 0.0;
  double int_h = 0.0;
  double int_sigma = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = problem.grid.time(k);
    int_b += std::pow(std::abs(problem.coeffs.b(t, 0.0)), p) * dt;
    int_h += std::pow(std::abs(problem.coeffs.h(t, 0.0)), p) * dt;
    const double s = problem.coeffs.sigma(t, 0.0);
    int_sigma += s * s * dt;
  }
  d.rhs = 1.0 + std::pow(std::abs(problem.x0), p) + int_b + int_h + std::pow(int_sigma, p / 2.0);
  d.ratio = d.lhs / d.rhs;
  return d;
}

AModulusFit check_A_modulus(const MRGSDESolution& solution, const MRGSDEProblem& problem) {
  const auto& A = solution.A;
  const auto& grid = problem.grid;
  AModulusFit fit;
  for (int s = A.first_step; s <= A.last_step(); ++s) {
    for (int t = s + 1; t <= A.last_step(); ++t) {
      const double delta = grid.time(t) - grid.time(s);
      const double c = std::abs(A.at(t) - A.at(s)) / (std::sqrt(delta) + problem.loss.F(delta));
      if (c > fit.fitted_C) {
        fit.fitted_C = c;
        fit.worst_s = s;
        fit.worst_t = t;
      }
    }
  }
  return fit;
}

ALipschitzDiagnostics check_A_lipschitz(const MRGSDESolution& solution, const MRGSDEProblem& problem) {
  if (!problem.loss.smooth) {
    throw PreconditionError("Lipschitz check of A needs a loss declared smooth; '" + problem.loss.name +
                            "' is not");
  }
  const auto& A = solution.A;
  ALipschitzDiagnostics d;
  for (int k = A.first_step; k < A.last_step(); ++k) {
    const double r = (A.at(k + 1) - A.at(k)) / (problem.grid.time(k + 1) - problem.grid.time(k));
    if (r > d.ratio) {
      d.ratio = r;
      d.worst_step = k;
    }
  }
  return d;
}

}  // namespace gmr::sde
