#include "gmr/sde/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gmr/errors.hpp"
#include "gmr/sde/forward.hpp"

namespace gmr::sde {
namespace {

int initial_delta_steps(const PicardConfig& config, const gexp::TimeGrid& grid) {
  const int n = grid.n_steps();
  int steps = n;
  if (config.delta_initial > 0.0) steps = static_cast<int>(std::lround(config.delta_initial / grid.dt()));
  return std::clamp(steps, std::max(1, config.delta_min_steps), std::max(1, n));
}

void check_config(const PicardConfig& c) {
  if (!(c.tol > 0.0)) throw PreconditionError("Picard tolerance must be positive");
  if (!(c.root_tol > 0.0)) throw PreconditionError("root tolerance must be positive");
  if (c.max_iter < 1) throw PreconditionError("max_iter must be at least 1");
  if (!(c.contraction_guard > 0.0 && c.contraction_guard < 1.0)) {
    throw PreconditionError("contraction_guard must lie in (0, 1)");
  }
  if (c.delta_min_steps < 1) throw PreconditionError("delta_min_steps must be at least 1");
}

enum class Outcome { Converged, NonContraction, Exhausted };

struct Attempt {
  Outcome outcome = Outcome::Exhausted;
  sp::SkorokhodSolution solution;
  SubintervalDiagnostics diag;
};

Attempt iterate(const MRGSDEProblem& problem, const gexp::PathLattice& lattice, const Subinterval& sub,
                const PicardConfig& config) {
  Attempt a;
  a.diag.start_step = sub.start_step;
  a.diag.end_step = sub.end_step;
  sp::ProcessOnLattice U(sub.start_step, sub.end_step, problem.x0 + config.initial_guess_offset);
  for (int it = 0; it < config.max_iter; ++it) {
    sp::SkorokhodSolution next = gamma_map(problem, U, lattice, sub, config.root_tol, config.method);
    const double d = sp::sup_distance(next.X, U);
    ++a.diag.gamma_applications;
    a.diag.distances.push_back(d);
    a.solution = std::move(next);
    U = a.solution.X;
    if (d <= config.tol) {
      a.diag.iterations = a.diag.gamma_applications - 1;
      a.outcome = Outcome::Converged;
      return a;
    }
    if (a.diag.distances.size() >= 2) {
      const double prev = a.diag.distances[a.diag.distances.size() - 2];
      const double ratio = prev > 0.0 ? d / prev : INFINITY;
      a.diag.ratios.push_back(ratio);
      if (ratio >= config.contraction_guard) {
        a.outcome = Outcome::NonContraction;
        return a;
      }
    }
  }
  a.outcome = Outcome::Exhausted;
  return a;
}

}  // namespace

sp::SkorokhodSolution gamma_map(const MRGSDEProblem& problem, const sp::ProcessOnLattice& U,
                                const gexp::PathLattice& lattice, const Subinterval& sub, double root_tol,
                                sp::SpMethod method) {
  const sp::ProcessOnLattice unreflected =
      integrate_forward(problem.coeffs, lattice, U, sub.start_step, sub.end_step, sub.initial);
  return sp::solve_sp(method, problem.loss, unreflected, lattice, root_tol);
}

MRGSDESolution picard_solve(const MRGSDEProblem& problem, const gexp::PathLattice& lattice,
                            const PicardConfig& config) {
  problem.validate();
  check_config(config);
  if (!(lattice.params() == problem.params) || !(lattice.grid() == problem.grid)) {
    throw PreconditionError("lattice does not match the problem's volatility band and grid");
  }

  const int n = problem.grid.n_steps();
  MRGSDESolution out;
  out.X = sp::ProcessOnLattice(0, n);
  out.A = sp::DeterministicPath{0, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0)};
  out.X.at(0)[0] = problem.x0;

  int delta_steps = initial_delta_steps(config, problem.grid);
  const int min_steps = std::max(1, config.delta_min_steps);
  int k0 = 0;
  while (k0 < n) {
    int restarts = 0;
    Attempt attempt;
    for (;;) {
      const int k1 = std::min(k0 + delta_steps, n);
      const auto start = out.X.at(k0);
      const Subinterval sub{k0, k1, std::vector<double>(start.begin(), start.end())};
      attempt = iterate(problem, lattice, sub, config);
      if (attempt.outcome == Outcome::Converged) break;

      std::ostringstream msg;
      if (attempt.outcome == Outcome::Exhausted) {
        msg << "Picard iteration did not reach tol = " << config.tol << " within max_iter = " << config.max_iter
            << " on steps [" << k0 << ", " << k1 << "]; last distance " << attempt.diag.distances.back();
        throw SolverError(msg.str());
      }
      if (delta_steps <= min_steps) {
        msg << "Gamma is not contracting on steps [" << k0 << ", " << k1 << "] at the minimum subinterval of "
            << min_steps << " step(s); observed ratio " << attempt.diag.ratios.back() << " >= guard "
            << config.contraction_guard;
        throw SolverError(msg.str());
      }
      delta_steps = std::max(min_steps, delta_steps / 2);
      ++restarts;
    }

    attempt.diag.restarts = restarts;
    const int k1 = attempt.diag.end_step;
    const double base = out.A.at(k0);
    out.junction_gap = std::max(out.junction_gap, std::abs(attempt.solution.A.at(k0)));
    for (int k = k0 + 1; k <= k1; ++k) {
      const auto src = attempt.solution.X.at(k);
      std::copy(src.begin(), src.end(), out.X.at(k).begin());
      out.A.at(k) = base + attempt.solution.A.at(k);
    }
    out.subintervals.push_back(std::move(attempt.diag));
    k0 = k1;
  }
  out.delta_steps = delta_steps;

  out.U = sp::ProcessOnLattice(0, n);
  for (int k = 0; k <= n; ++k) {
    const auto x = out.X.at(k);
    auto u = out.U.at(k);
    const double a = out.A.at(k);
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = x[i] - a;
  }
  return out;
}

MRGSDESolution picard_solve(const MRGSDEProblem& problem, const PicardConfig& config) {
  problem.validate();
  const gexp::PathLattice lattice = gexp::build_lattice(problem.params, problem.grid, problem.enumeration_cap);
  return picard_solve(problem, lattice, config);
}

}  // namespace gmr::sde
