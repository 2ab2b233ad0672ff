#include "gmr/sp/skorokhod.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gmr/errors.hpp"
#include "gmr/gexp/expectation.hpp"
#include "gmr/kernels/parallel_for.hpp"

namespace gmr::sp {
namespace {

double constraint_value(double t, std::span<const double> x, const LossSpec& loss) {
  return gexp::sup_expectation_of(x, [&](double v) { return loss.l(t, v); });
}

void check_initial(const LossSpec& loss, const ProcessOnLattice& S, const gexp::PathLattice& lattice, double tol) {
  if (S.last_step() > lattice.depth()) throw PreconditionError("process extends beyond the lattice");
  const int k = S.first_step();
  const double e = constraint_value(lattice.grid().time(k), S.at(k), loss);
  if (e < -tol) {
    std::ostringstream msg;
    msg << "initial constraint violated: E[l(t, S)] = " << e << " < 0 at step " << k;
    throw PreconditionError(msg.str());
  }
}

ProcessOnLattice add_compensator(const ProcessOnLattice& S, const DeterministicPath& A) {
  ProcessOnLattice X(S.first_step(), S.last_step());
  for (int k = S.first_step(); k <= S.last_step(); ++k) {
    const auto s = S.at(k);
    auto x = X.at(k);
    const double a = A.at(k);
    for (std::size_t i = 0; i < s.size(); ++i) x[i] = s[i] + a;
  }
  return X;
}

}  // namespace

DeterministicSkorokhodResult deterministic_skorokhod(const DeterministicPath& s, const DeterministicPath& barrier) {
  if (s.first_step != barrier.first_step || s.values.size() != barrier.values.size() || s.values.empty()) {
    throw PreconditionError("deterministic Skorokhod map needs s and barrier on the same grid");
  }
  if (s.values.front() < barrier.values.front()) {
    throw PreconditionError("deterministic Skorokhod map needs s(0) >= barrier(0)");
  }
  DeterministicSkorokhodResult r{{s.first_step, std::vector<double>(s.values.size())},
                                 {s.first_step, std::vector<double>(s.values.size())}};
  double running = 0.0;
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    running = std::max(running, barrier.values[k] - s.values[k]);
    r.A.values[k] = running;
    r.x.values[k] = s.values[k] + running;
  }
  return r;
}

SkorokhodSolution solve_sp_operator(const LossSpec& loss, const ProcessOnLattice& S,
                                    const gexp::PathLattice& lattice, double tol) {
  check_initial(loss, S, lattice, tol);
  const int first = S.first_step();
  const int last = S.last_step();
  std::vector<double> L(static_cast<std::size_t>(last - first + 1), 0.0);
  // Each L_t is independent; the running supremum below is a sequential fold.
  kernels::for_each_index(first + 1, last + 1, [&](int k) {
    L[static_cast<std::size_t>(k - first)] = loss_L(lattice.grid().time(k), S.functional(k), lattice, loss, tol);
  });

  // A starts at 0 by definition; the initial constraint holds to -tol.
  DeterministicPath A{first, std::vector<double>(L.size(), 0.0)};
  for (std::size_t k = 1; k < L.size(); ++k) A.values[k] = std::max(A.values[k - 1], L[k]);
  return {add_compensator(S, A), std::move(A)};
}

SkorokhodSolution solve_sp_reduction(const LossSpec& loss, const ProcessOnLattice& S,
                                     const gexp::PathLattice& lattice, double tol) {
  check_initial(loss, S, lattice, tol);
  const int first = S.first_step();
  const int last = S.last_step();
  const auto n = static_cast<std::size_t>(last - first + 1);
  DeterministicPath s{first, std::vector<double>(n)};
  DeterministicPath barrier{first, std::vector<double>(n)};
  kernels::for_each_index(first, last + 1, [&](int k) {
    const auto f = S.functional(k);
    s.at(k) = gexp::sup_expectation_of(f.values);
    barrier.at(k) = map_H_inverse(lattice.grid().time(k), 0.0, f, lattice, loss, tol);
  });
  // E[l(t0, S0)] >= -tol: the initial barrier sits at most a root tolerance
  // above E[S0]; pin it so that A(first) = 0.
  barrier.values.front() = std::min(barrier.values.front(), s.values.front());

  auto reduced = deterministic_skorokhod(s, barrier);
  return {add_compensator(S, reduced.A), std::move(reduced.A)};
}

SkorokhodSolution solve_sp(SpMethod method, const LossSpec& loss, const ProcessOnLattice& S,
                           const gexp::PathLattice& lattice, double tol) {
  return method == SpMethod::Operator ? solve_sp_operator(loss, S, lattice, tol)
                                      : solve_sp_reduction(loss, S, lattice, tol);
}

VerificationReport verify_sp(const SkorokhodSolution& solution, const LossSpec& loss, const ProcessOnLattice& S,
                             const gexp::PathLattice& lattice, double tol) {
  VerificationReport r;
  const int first = S.first_step();
  const int last = S.last_step();
  const auto& X = solution.X;
  const auto& A = solution.A;
  if (!X.covers(first) || !X.covers(last) || A.first_step != first || A.last_step() != last) {
    r.identity_residual = INFINITY;
    r.pass = false;
    return r;
  }

  std::vector<double> expected_loss(static_cast<std::size_t>(last - first + 1));
  for (int k = first; k <= last; ++k) {
    const auto x = X.at(k);
    const auto s = S.at(k);
    const double a = A.at(k);
    for (std::size_t i = 0; i < x.size(); ++i) r.identity_residual = std::max(r.identity_residual, std::abs(x[i] - s[i] - a));
  }
  kernels::for_each_index(first, last + 1, [&](int k) {
    expected_loss[static_cast<std::size_t>(k - first)] = constraint_value(lattice.grid().time(k), X.at(k), loss);
  });

  r.constraint_min = *std::min_element(expected_loss.begin(), expected_loss.end());
  r.compensator_admissible = A.values.front() == 0.0;
  for (std::size_t k = 0; k + 1 < expected_loss.size(); ++k) {
    const double dA = A.values[k + 1] - A.values[k];
    if (dA < 0.0) r.compensator_admissible = false;
    // A increases at the step where the running supremum moves, so the
    // constraint is read at the right end of each grid cell.
    r.flatoff_residual += std::abs(expected_loss[k + 1]) * std::abs(dA);
  }
  const double total = A.values.back() - A.values.front();
  r.pass = r.identity_residual <= 1e-12 && r.constraint_min >= -tol && r.flatoff_residual <= tol * (total + 1.0);
  return r;
}

}  // namespace gmr::sp
