#include <gtest/gtest.h>

#include <cmath>

#include "gmr/errors.hpp"
#include "gmr/sde/estimates.hpp"
#include "support.hpp"

using namespace gmr;
using namespace gmr::sde;
using gmr::testing::build;
using gmr::testing::problem_section;

namespace {

struct Solved {
  MRGSDEProblem problem;
  gexp::PathLattice lattice;
  MRGSDESolution solution;
};

Solved solve(const harness::ProblemSection& section) {
  auto problem = build(section);
  auto lattice = gexp::build_lattice(problem.params, problem.grid);
  auto solution = picard_solve(problem, lattice);
  return {std::move(problem), std::move(lattice), std::move(solution)};
}

harness::Component zero() { return {"zero", {}}; }
harness::Component unreachable_floor() { return {"linear", {{"c0", -100.0}, {"c1", 0.0}}}; }

}  // namespace

TEST(MomentEstimate, ZeroCoefficients) {
  auto section = problem_section(1.5, 4, zero(), zero(), unreachable_floor());
  const auto s = solve(section);
  const auto d = check_moment_estimate(s.solution, s.problem, s.lattice);
  EXPECT_EQ(d.lhs, 2.25);
  EXPECT_EQ(d.rhs, 1.0 + 2.25);
}

TEST(MomentEstimate, UnitDriftWithoutReflection) {
  const auto s = solve(problem_section(0.5, 4, {"constant_drift", {{"value", 1.0}}}, zero(), unreachable_floor()));
  const auto d = check_moment_estimate(s.solution, s.problem, s.lattice);
  EXPECT_NEAR(d.lhs, 1.5 * 1.5, 1e-12);
  EXPECT_NEAR(d.rhs, 1.0 + 0.25 + 1.0, 1e-12);
}

TEST(MomentEstimate, RatioIsStableUnderRefinement) {
  double lo = INFINITY;
  double hi = 0.0;
  for (int n : {4, 6, 8}) {
    const auto s = solve(problem_section(0.0, n, zero(), {"constant_sigma", {}}, {"linear", {}}));
    const double r = check_moment_estimate(s.solution, s.problem, s.lattice).ratio;
    EXPECT_GT(r, 0.0);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  EXPECT_LE(hi / lo, 2.0);
}

TEST(AModulus, ZeroCompensator) {
  const auto s = solve(problem_section(0.0, 4, zero(), {"constant_sigma", {}}, unreachable_floor()));
  EXPECT_EQ(check_A_modulus(s.solution, s.problem).fitted_C, 0.0);
}

TEST(AModulus, ClosedFormFitsUnderOne) {
  // A_t = t and F(d) = d, so |t - s| / (sqrt|t - s| + |t - s|) < 1.
  const auto s = solve(problem_section(0.0, 6, zero(), {"constant_sigma", {}}, {"linear", {}}));
  const auto fit = check_A_modulus(s.solution, s.problem);
  EXPECT_GT(fit.fitted_C, 0.0);
  EXPECT_LE(fit.fitted_C, 1.0);
  EXPECT_EQ(fit.worst_s, 0);
  EXPECT_EQ(fit.worst_t, 6);
}

TEST(AModulus, StableUnderStepHalving) {
  const harness::Component b{"ou_drift", {{"theta", 1.0}, {"mu", 0.0}}};
  const auto coarse = solve(problem_section(1.0, 4, b, {"linear_sigma", {}}, {"linear", {{"c0", 1.0}, {"c1", 0.5}}}));
  const auto fine = solve(problem_section(1.0, 8, b, {"linear_sigma", {}}, {"linear", {{"c0", 1.0}, {"c1", 0.5}}}));
  const double c1 = check_A_modulus(coarse.solution, coarse.problem).fitted_C;
  const double c2 = check_A_modulus(fine.solution, fine.problem).fitted_C;
  EXPECT_GT(c1, 0.0);
  EXPECT_LE(std::max(c1, c2) / std::min(c1, c2), 1.5);
}

TEST(ALipschitz, ClosedFormRatioIsOne) {
  const auto s = solve(problem_section(0.0, 6, zero(), {"constant_sigma", {}}, {"linear", {}}));
  EXPECT_NEAR(check_A_lipschitz(s.solution, s.problem).ratio, 1.0, 1e-8);
}

TEST(ALipschitz, ZeroCompensator) {
  const auto s = solve(problem_section(0.0, 4, zero(), {"constant_sigma", {}}, unreachable_floor()));
  EXPECT_EQ(check_A_lipschitz(s.solution, s.problem).ratio, 0.0);
}

TEST(ALipschitz, SmoothLossStableUnderRefinement) {
  double lo = INFINITY;
  double hi = 0.0;
  for (int n : {4, 6, 8, 10}) {
    const auto s = solve(problem_section(0.0, n, zero(), {"constant_sigma", {}}, {"smooth_sin", {}}));
    const double r = check_A_lipschitz(s.solution, s.problem).ratio;
    EXPECT_GT(r, 0.0);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  EXPECT_LE(hi / lo, 1.5);
}

TEST(ALipschitz, NeedsSmoothLoss) {
  const auto s = solve(problem_section(0.0, 4, zero(), {"constant_sigma", {}}, {"arctan_shift", {}}));
  EXPECT_THROW(check_A_lipschitz(s.solution, s.problem), PreconditionError);
}
