#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gmr/errors.hpp"
#include "gmr/gexp/expectation.hpp"
#include "gmr/sp/diagnostics.hpp"
#include "gmr/sp/skorokhod.hpp"
#include "support.hpp"

using namespace gmr;
using namespace gmr::sp;
using gmr::testing::arctan_loss;
using gmr::testing::linear_loss;
using gmr::testing::make_lattice;

namespace {

DeterministicPath path_of(int n, const std::function<double(double)>& f) {
  DeterministicPath p{0, std::vector<double>(static_cast<std::size_t>(n) + 1)};
  for (int k = 0; k <= n; ++k) p.values[static_cast<std::size_t>(k)] = f(static_cast<double>(k) / n);
  return p;
}

// S_t = x0 + mu t + scale B_t.
ProcessOnLattice arithmetic(const gexp::PathLattice& lat, double x0, double mu = 0.0, double scale = 1.0) {
  return ProcessOnLattice::from_nodes(lat, [=](double t, double b, double) { return x0 + mu * t + scale * b; });
}

double max_gap(const DeterministicPath& a, const DeterministicPath& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) m = std::max(m, std::abs(a.values[k] - b.values[k]));
  return m;
}

}  // namespace

TEST(DeterministicSkorokhod, InactiveBarrier) {
  const auto s = path_of(10, [](double t) { return 1.0 + t * t; });
  const auto r = deterministic_skorokhod(s, path_of(10, [](double) { return 0.5; }));
  for (double a : r.A.values) EXPECT_EQ(a, 0.0);
  EXPECT_EQ(r.x.values, s.values);
}

TEST(DeterministicSkorokhod, RisingBarrier) {
  const auto r = deterministic_skorokhod(path_of(10, [](double) { return 0.0; }), path_of(10, [](double t) { return t; }));
  for (int k = 0; k <= 10; ++k) {
    EXPECT_DOUBLE_EQ(r.A.at(k), k / 10.0);
    EXPECT_DOUBLE_EQ(r.x.at(k), k / 10.0);
  }
}

TEST(DeterministicSkorokhod, SineAgainstRunningMaximum) {
  const int n = 100;
  const auto s = path_of(n, [](double t) { return std::sin(2 * std::numbers::pi * t); });
  const auto r = deterministic_skorokhod(s, path_of(n, [](double) { return 0.0; }));
  double running = 0.0;
  for (int k = 0; k <= n; ++k) {
    running = std::max(running, -s.at(k));
    EXPECT_EQ(r.A.at(k), running);
    EXPECT_GE(r.x.at(k), -1e-15);
  }
  EXPECT_DOUBLE_EQ(r.A.values.back(), 1.0);
}

TEST(DeterministicSkorokhod, RejectsInitialViolation) {
  EXPECT_THROW(deterministic_skorokhod(path_of(3, [](double) { return 0.0; }), path_of(3, [](double) { return 1.0; })),
               PreconditionError);
}

TEST(SolveSp, NoReflectionWhenConstraintHolds) {
  const auto lat = make_lattice(5, 1.0, 2.0);
  const auto S = arithmetic(lat, 1.0);
  const auto loss = linear_loss(-1.0, 0.0);  // x + 1
  for (auto m : {SpMethod::Operator, SpMethod::Reduction}) {
    const auto sol = solve_sp(m, loss, S, lat);
    for (double a : sol.A.values) EXPECT_EQ(a, 0.0);
    for (int k = 0; k <= 5; ++k) {
      const auto x = sol.X.at(k);
      const auto s = S.at(k);
      EXPECT_TRUE(std::equal(x.begin(), x.end(), s.begin()));
    }
  }
}

TEST(SolveSp, LinearLossClosedForm) {
  // c(t) = 0.3 + 2t - 3t^2 is not affine, so build the loss directly.
  const auto lat = make_lattice(6, 1.0, 2.0);
  const double x0 = 0.4;
  LossSpec loss = linear_loss(0.0, 0.0);
  auto c = [](double t) { return 0.3 + 2.0 * t - 3.0 * t * t; };
  loss.l = [c](double t, double x) { return x - c(t); };
  loss.F = [](double d) { return 5.0 * d; };
  const auto S = arithmetic(lat, x0);
  for (auto m : {SpMethod::Operator, SpMethod::Reduction}) {
    const auto sol = solve_sp(m, loss, S, lat, 1e-10);
    double running = 0.0;
    for (int k = 0; k <= 6; ++k) {
      running = std::max(running, c(lat.grid().time(k)) - x0);
      EXPECT_NEAR(sol.A.at(k), running, 1e-9) << "k=" << k;
    }
    EXPECT_TRUE(verify_sp(sol, loss, S, lat, 1e-8).pass);
  }
}

TEST(SolveSp, ReductionInitialOrdering) {
  const auto lat = make_lattice(4, 1.0, 3.0);
  const auto S = arithmetic(lat, 1.0);
  const auto loss = arctan_loss(0.5, 1.0);
  const double s0 = gexp::sup_expectation_of(S.at(0));
  const double barrier0 = map_H_inverse(0.0, 0.0, S.functional(0), lat, loss);
  EXPECT_GE(s0, barrier0);
}

TEST(SolveSp, ConstructionsAgree) {
  struct Case {
    LossSpec loss;
    double x0, mu, scale;
  };
  const auto lat = make_lattice(6, 1.0, 4.0);
  const Case cases[] = {{arctan_loss(1.0, 0.0), 0.5, 0.0, 1.0},
                        {arctan_loss(0.0, 1.5), 0.0, 0.0, 1.0},
                        {gmr::testing::sin_loss(0.0, 1.0), 0.0, 0.3, 0.5},
                        {linear_loss(0.0, 1.0), 0.0, -0.5, 2.0}};
  for (const auto& c : cases) {
    const auto S = arithmetic(lat, c.x0, c.mu, c.scale);
    const auto a = solve_sp_operator(c.loss, S, lat, 1e-10);
    const auto b = solve_sp_reduction(c.loss, S, lat, 1e-10);
    EXPECT_LE(max_gap(a.A, b.A), 1e-9) << c.loss.name;
    EXPECT_TRUE(verify_sp(a, c.loss, S, lat, 1e-8).pass) << c.loss.name;
    EXPECT_TRUE(verify_sp(b, c.loss, S, lat, 1e-8).pass) << c.loss.name;
    // x_t = H^{-1}(t, E[l(t, X_t)], S_t) for the reduction.
    for (int k = 0; k <= 6; ++k) {
      const double t = lat.grid().time(k);
      const double el = gexp::sup_expectation_of(b.X.at(k), [&](double v) { return c.loss.l(t, v); });
      const double x = gexp::sup_expectation_of(b.X.at(k));
      EXPECT_NEAR(map_H_inverse(t, el, S.functional(k), lat, c.loss, 1e-12), x, 1e-9);
    }
  }
}

TEST(SolveSp, RejectsInitialViolation) {
  const auto lat = make_lattice(3, 1.0, 2.0);
  const auto S = arithmetic(lat, 0.0);
  EXPECT_THROW(solve_sp_operator(linear_loss(1.0, 0.0), S, lat), PreconditionError);
  EXPECT_THROW(solve_sp_reduction(linear_loss(1.0, 0.0), S, lat), PreconditionError);
}

TEST(SolveSp, CompensatorIsAdmissible) {
  gmr::testing::Rng rng(12);
  const auto lat = make_lattice(5, 1.0, 2.0);
  for (int i = 0; i < 10; ++i) {
    const double mu = rng.uniform(-2, 2);
    const double c1 = rng.uniform(-1, 2);
    const auto loss = arctan_loss(0.0, c1);
    const auto S = arithmetic(lat, 0.0, mu, rng.uniform(0.2, 2.0));
    for (auto m : {SpMethod::Operator, SpMethod::Reduction}) {
      const auto sol = solve_sp(m, loss, S, lat);
      const auto v = verify_sp(sol, loss, S, lat, 1e-8);
      EXPECT_TRUE(v.pass);
      EXPECT_TRUE(v.compensator_admissible);
      // Flat-off complementarity step by step.
      for (int k = 0; k < 5; ++k) {
        if (sol.A.at(k + 1) > sol.A.at(k)) {
          const double t = lat.grid().time(k + 1);
          const double e = gexp::sup_expectation_of(sol.X.at(k + 1), [&](double x) { return loss.l(t, x); });
          EXPECT_LE(std::abs(e), loss.C_l * 1e-10 * 1.01);
        }
      }
    }
  }
}

TEST(VerifySp, DetectsPerturbations) {
  const auto lat = make_lattice(6, 1.0, 2.0);
  const auto S = arithmetic(lat, 0.0);
  const auto loss = linear_loss(0.0, 1.0);
  auto sol = solve_sp_operator(loss, S, lat);
  const auto good = verify_sp(sol, loss, S, lat, 1e-8);
  EXPECT_TRUE(good.pass);
  EXPECT_LE(good.flatoff_residual, 1e-9);

  auto shift_last = [&](double d) {
    auto s = sol;
    s.A.values.back() += d;
    for (auto& x : s.X.at(6)) x += d;
    return s;
  };
  const auto up = verify_sp(shift_last(1.0), loss, S, lat, 1e-8);
  EXPECT_FALSE(up.pass);
  EXPECT_GT(up.flatoff_residual, 0.5);
  EXPECT_GE(up.constraint_min, -1e-8);

  const auto down = verify_sp(shift_last(-1.0), loss, S, lat, 1e-8);
  EXPECT_FALSE(down.pass);
  EXPECT_LT(down.constraint_min, -0.5);

  auto broken = sol;
  broken.X.at(3)[0] += 1e-6;
  EXPECT_FALSE(verify_sp(broken, loss, S, lat, 1e-8).pass);
}

TEST(Stability, IdenticalInputs) {
  const auto lat = make_lattice(5, 1.0, 2.0);
  const auto S = arithmetic(lat, 0.0);
  const auto loss = arctan_loss(0.0, 1.0);
  const auto sol = solve_sp_operator(loss, S, lat);
  const auto d = stability_gap(sol, sol, loss, loss, S, S, lat, [](double) { return 0.0; });
  EXPECT_EQ(d.lhs, 0.0);
  EXPECT_EQ(d.rhs, 0.0);
  EXPECT_TRUE(d.holds);
}

TEST(Stability, ProcessAndLossShifts) {
  const auto lat = make_lattice(6, 1.0, 4.0);
  for (const auto& loss : {linear_loss(0.0, 1.0), arctan_loss(0.0, 1.5)}) {
    const auto S1 = arithmetic(lat, 0.0);
    const auto sol1 = solve_sp_operator(loss, S1, lat);
    for (double eps : {0.1, 1.0}) {
      const auto S2 = arithmetic(lat, eps);
      const auto sol2 = solve_sp_operator(loss, S2, lat);
      const auto d = stability_gap(sol1, sol2, loss, loss, S1, S2, lat, [](double) { return 0.0; });
      EXPECT_TRUE(d.holds) << loss.name << " eps=" << eps;
      EXPECT_NEAR(d.process_term, (1 + 2 * loss.C_l / loss.c_l) * eps, 1e-12);
    }
    for (double eps : {0.05, 0.5}) {
      auto loss2 = loss;
      loss2.l = [l = loss.l, eps](double t, double x) { return l(t, x) + eps; };
      const auto sol2 = solve_sp_operator(loss2, S1, lat);
      const auto d = stability_gap(sol1, sol2, loss, loss2, S1, S1, lat, [eps](double) { return eps; });
      EXPECT_TRUE(d.holds) << loss.name << " eps=" << eps;
      EXPECT_LE(d.lhs, eps / loss.c_l + 1e-9);
    }
  }
}

TEST(Stability, MismatchedGridsThrow) {
  const auto lat = make_lattice(4, 1.0, 2.0);
  const auto S = arithmetic(lat, 0.0);
  const auto loss = linear_loss(0.0, 1.0);
  const auto sol = solve_sp_operator(loss, S, lat);
  ProcessOnLattice shorter(0, 3);
  EXPECT_THROW(stability_gap(sol, sol, loss, loss, S, shorter, lat, [](double) { return 0.0; }), PreconditionError);
}

TEST(Modulus, HoldsOverAllPairs) {
  const auto lat = make_lattice(6, 1.0, 2.0);
  for (const auto& loss : {linear_loss(0.0, 1.0), arctan_loss(0.0, 2.0), gmr::testing::sin_loss(0.0, 1.0)}) {
    const auto S = arithmetic(lat, 0.0, 0.5);
    const auto sol = solve_sp_operator(loss, S, lat);
    const auto m = sp_modulus_check(sol, loss, S, lat);
    EXPECT_TRUE(m.holds) << loss.name << " excess " << m.worst_excess;
  }
}
