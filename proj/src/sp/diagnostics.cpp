#include "gmr/sp/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "gmr/errors.hpp"
#include "gmr/gexp/expectation.hpp"
#include "gmr/kernels/parallel_for.hpp"

namespace gmr::sp {
namespace {

// E|X_r - Y_s| with Y_s read at the depth-s ancestor of each depth-r node.
double expected_abs_gap(const ProcessOnLattice& X, int r, const ProcessOnLattice& Y, int s) {
  const auto x = X.at(r);
  const auto y = Y.at(s);
  std::vector<double> gap(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) gap[i] = std::abs(x[i] - y[gexp::ancestor_of(i, r, s)]);
  return gexp::sup_expectation_of(gap);
}

}  // namespace

StabilityDiagnostics stability_gap(const SkorokhodSolution& sol1, const SkorokhodSolution& sol2,
                                   const LossSpec& loss1, const LossSpec& loss2, const ProcessOnLattice& S1,
                                   const ProcessOnLattice& S2, const gexp::PathLattice& lattice,
                                   const std::function<double(double)>& sup_loss_gap, double slack) {
  const int first = S1.first_step();
  const int last = S1.last_step();
  if (S2.first_step() != first || S2.last_step() != last || sol1.A.first_step != first ||
      sol2.A.first_step != first || sol1.A.last_step() != last || sol2.A.last_step() != last) {
    throw PreconditionError("stability_gap needs both problems on the same grid");
  }

  StabilityDiagnostics d;
  d.c_l = std::min(loss1.c_l, loss2.c_l);
  d.C_l = std::max(loss1.C_l, loss2.C_l);

  double loss_sup = 0.0;
  std::vector<double> process_gap(static_cast<std::size_t>(last - first + 1));
  for (int k = first; k <= last; ++k) {
    d.lhs = std::max(d.lhs, std::abs(sol1.A.at(k) - sol2.A.at(k)));
    loss_sup = std::max(loss_sup, sup_loss_gap(lattice.grid().time(k)));
  }
  kernels::for_each_index(first, last + 1, [&](int k) {
    process_gap[static_cast<std::size_t>(k - first)] = expected_abs_gap(S1, k, S2, k);
  });
  const double process_sup = *std::max_element(process_gap.begin(), process_gap.end());

  d.loss_term = loss_sup / d.c_l;
  d.process_term = (1.0 + 2.0 * d.C_l / d.c_l) * process_sup;
  d.rhs = d.loss_term + d.process_term;
  d.holds = d.lhs <= d.rhs + slack;
  return d;
}

ModulusDiagnostics sp_modulus_check(const SkorokhodSolution& solution, const LossSpec& loss,
                                    const ProcessOnLattice& S, const gexp::PathLattice& lattice, double slack) {
  const int first = S.first_step();
  const int last = S.last_step();
  const auto n = static_cast<std::size_t>(last - first + 1);
  const double factor = 1.0 + 2.0 * loss.C_l / loss.c_l;

  // gap[s][r] = E|S_r - S_s| for r >= s.
  std::vector<std::vector<double>> gap(n, std::vector<double>(n, 0.0));
  kernels::for_each_index(0, static_cast<int>(n * n), [&](int idx) {
    const auto s = static_cast<std::size_t>(idx) / n;
    const auto r = static_cast<std::size_t>(idx) % n;
    if (r > s) {
      gap[s][r] = expected_abs_gap(S, first + static_cast<int>(r), S, first + static_cast<int>(s));
    }
  });

  ModulusDiagnostics d;
  d.worst_excess = -INFINITY;
  const auto& grid = lattice.grid();
  for (std::size_t s = 0; s < n; ++s) {
    double running = 0.0;
    for (std::size_t t = s + 1; t < n; ++t) {
      running = std::max(running, gap[s][t]);
      const int ks = first + static_cast<int>(s);
      const int kt = first + static_cast<int>(t);
      const double lhs = std::abs(solution.A.at(kt) - solution.A.at(ks));
      const double rhs = factor * running + loss.F(grid.time(kt) - grid.time(ks)) / loss.c_l;
      if (lhs - rhs > d.worst_excess) {
        d.worst_excess = lhs - rhs;
        d.worst_s = ks;
        d.worst_t = kt;
      }
    }
  }
  if (n < 2) d.worst_excess = 0.0;
  d.holds = d.worst_excess <= slack;
  return d;
}

}  // namespace gmr::sp
