#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gmr/errors.hpp"
#include "gmr/gexp/expectation.hpp"
#include "gmr/sde/picard.hpp"
#include "gmr/sp/skorokhod.hpp"
#include "support.hpp"

using namespace gmr;
using namespace gmr::sde;
using gmr::testing::build;
using gmr::testing::problem_section;

namespace {

// dX = sigma dB + dA, E[X_t - t] >= 0 from x0 = 0: the answer is A_t = t.
MRGSDEProblem closed_form(int n = 6) {
  return build(problem_section(0.0, n, {"zero", {}}, {"constant_sigma", {}}, {"linear", {{"c0", 0.0}, {"c1", 1.0}}}));
}

// Mean-reverting drift with a state-dependent diffusion and a rising floor.
MRGSDEProblem reverting(int n = 6, double lo = 1.0, double hi = 2.0) {
  return build(problem_section(1.0, n, {"ou_drift", {{"theta", 1.0}, {"mu", 0.0}}}, {"linear_sigma", {}},
                               {"linear", {{"c0", 1.0}, {"c1", 0.5}}}, lo, hi));
}

gexp::PathLattice lattice_of(const MRGSDEProblem& p) { return gexp::build_lattice(p.params, p.grid); }

}  // namespace

TEST(Picard, StateIndependentCoefficientsNeedOneUpdate) {
  const auto problem = closed_form();
  const auto sol = picard_solve(problem);
  ASSERT_EQ(sol.subintervals.size(), 1U);
  EXPECT_EQ(sol.subintervals[0].iterations, 1);
  EXPECT_EQ(sol.subintervals[0].gamma_applications, 2);
  EXPECT_EQ(sol.subintervals[0].distances.back(), 0.0);
}

TEST(Picard, ClosedFormCompensator) {
  const auto problem = closed_form(8);
  const auto sol = picard_solve(problem);
  for (int k = 0; k <= 8; ++k) EXPECT_NEAR(sol.A.at(k), problem.grid.time(k), 1e-9);
  EXPECT_EQ(sol.A.at(0), 0.0);
}

TEST(Picard, InitialGuessDoesNotMatter) {
  const auto problem = reverting();
  PicardConfig shifted;
  shifted.initial_guess_offset = 5.0;
  const auto a = picard_solve(problem);
  const auto b = picard_solve(problem, shifted);
  EXPECT_LE(sp::sup_distance(a.X, b.X), 1e-8);
  for (int k = 0; k <= 6; ++k) EXPECT_NEAR(a.A.at(k), b.A.at(k), 1e-8);
}

TEST(Picard, DistancesDecayGeometrically) {
  const auto sol = picard_solve(reverting());
  for (const auto& sub : sol.subintervals) {
    for (double r : sub.ratios) EXPECT_LT(r, 0.5);
    for (std::size_t i = 1; i < sub.distances.size(); ++i) EXPECT_LT(sub.distances[i], sub.distances[i - 1]);
  }
}

TEST(Picard, ExhaustedIterationsThrow) {
  PicardConfig config;
  config.max_iter = 1;
  EXPECT_THROW(picard_solve(reverting(), config), SolverError);
}

TEST(Picard, RejectsBadConfigAndMismatchedLattice) {
  PicardConfig bad;
  bad.contraction_guard = 1.0;
  EXPECT_THROW(picard_solve(closed_form(), bad), PreconditionError);
  const auto other = gmr::testing::make_lattice(6, 1.0, 3.0);
  EXPECT_THROW(picard_solve(closed_form(), other), PreconditionError);
}

TEST(Picard, PastedSubintervalsMatchFullHorizon) {
  const auto problem = reverting();
  PicardConfig short_delta;
  short_delta.delta_initial = 2.0 / 6.0;
  const auto pasted = picard_solve(problem, short_delta);
  const auto whole = picard_solve(problem);
  EXPECT_EQ(pasted.subintervals.size(), 3U);
  EXPECT_EQ(pasted.delta_steps, 2);
  EXPECT_EQ(pasted.junction_gap, 0.0);
  EXPECT_EQ(pasted.A.at(0), 0.0);
  for (int k = 1; k <= 6; ++k) EXPECT_GE(pasted.A.at(k), pasted.A.at(k - 1));
  EXPECT_LE(sp::sup_distance(pasted.X, whole.X), 1e-8);
  for (int k = 0; k <= 6; ++k) EXPECT_NEAR(pasted.A.at(k), whole.A.at(k), 1e-8);
}

TEST(Picard, SolutionIsAFixedPoint) {
  const auto problem = reverting();
  const auto lat = lattice_of(problem);
  const auto sol = picard_solve(problem, lat);
  const auto again = gamma_map(problem, sol.X, lat, {0, 6, {problem.x0}});
  EXPECT_LE(sp::sup_distance(again.X, sol.X), 1e-8);
}

TEST(Picard, SolutionSolvesItsSkorokhodProblem) {
  const auto problem = reverting();
  const auto lat = lattice_of(problem);
  const auto sol = picard_solve(problem, lat);
  const auto report = sp::verify_sp({sol.X, sol.A}, problem.loss, sol.U, lat, 1e-8);
  EXPECT_TRUE(report.pass) << report.identity_residual << ' ' << report.constraint_min << ' '
                           << report.flatoff_residual;
  EXPECT_TRUE(report.compensator_admissible);
}

TEST(Picard, ClassicalLimitAgainstMeanRecursion) {
  // With one volatility the expectation is linear and the mean obeys
  //   u_{k+1} = u_k + theta (mu - m_k) dt,  A_{k+1} = max(A_k, c_{k+1} - u_{k+1}),  m = u + A.
  const int n = 8;
  const auto problem = reverting(n, 1.5, 1.5);
  const auto sol = picard_solve(problem);
  const double dt = problem.grid.dt();
  double u = 1.0;
  double A = 0.0;
  for (int k = 0; k < n; ++k) {
    const double m = u + A;
    u += (0.0 - m) * dt;
    A = std::max(A, 1.0 + 0.5 * problem.grid.time(k + 1) - u);
    EXPECT_NEAR(sol.A.at(k + 1), A, 1e-9) << "step " << k + 1;
    const auto x = sol.X.at(k + 1);
    double mean = 0.0;
    for (double v : x) mean += v;
    EXPECT_NEAR(mean / static_cast<double>(x.size()), u + A, 1e-9);
  }
}

TEST(Picard, GammaContractsOnShortSubintervals) {
  const auto problem = reverting();
  const auto lat = lattice_of(problem);
  const double eps = 0.25;
  const Subinterval sub{0, 1, {problem.x0}};
  const sp::ProcessOnLattice U1(0, 1, problem.x0);
  const sp::ProcessOnLattice U2(0, 1, problem.x0 + eps);
  const auto a = gamma_map(problem, U1, lat, sub);
  const auto b = gamma_map(problem, U2, lat, sub);
  const double dt = problem.grid.dt();
  const double bound = 3.0 * problem.coeffs.kappa * eps * (dt + std::sqrt(problem.params.sigma_high_sq * dt));
  EXPECT_LE(sp::sup_distance(a.X, b.X), bound);
  EXPECT_GT(sp::sup_distance(a.X, b.X), 0.0);
}

TEST(Picard, ReductionMethodAgrees) {
  const auto problem = reverting();
  PicardConfig reduction;
  reduction.method = sp::SpMethod::Reduction;
  const auto a = picard_solve(problem);
  const auto b = picard_solve(problem, reduction);
  for (int k = 0; k <= 6; ++k) EXPECT_NEAR(a.A.at(k), b.A.at(k), 1e-9);
}
