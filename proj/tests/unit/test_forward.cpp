#include <gtest/gtest.h>

#include <cmath>

#include "gmr/errors.hpp"
#include "gmr/sde/forward.hpp"
#include "support.hpp"

using namespace gmr;
using namespace gmr::sde;
using gmr::testing::make_lattice;

namespace {

CoefficientFn constant(double v) { return {"constant", [v](double, double) { return v; }, false}; }

Coefficients coeffs(double b, double h, double s) { return {constant(b), constant(h), constant(s), 1.0}; }

sp::ProcessOnLattice run(const Coefficients& c, const gexp::PathLattice& lat, double x0) {
  const sp::ProcessOnLattice input(0, lat.depth(), x0);
  const double init[] = {x0};
  return integrate_forward(c, lat, input, 0, lat.depth(), init);
}

}  // namespace

TEST(Forward, ZeroCoefficientsKeepInitialValue) {
  const auto lat = make_lattice(4, 1.0, 2.0);
  const auto X = run(coeffs(0, 0, 0), lat, 0.7);
  for (int k = 0; k <= 4; ++k) {
    for (double x : X.at(k)) EXPECT_EQ(x, 0.7);
  }
}

TEST(Forward, UnitDriftIsTime) {
  const auto lat = make_lattice(5, 1.0, 2.0, 2.0);
  const auto X = run(coeffs(1, 0, 0), lat, 0.5);
  for (int k = 0; k <= 5; ++k) {
    for (double x : X.at(k)) EXPECT_NEAR(x, 0.5 + lat.grid().time(k), 1e-14);
  }
}

TEST(Forward, QuadraticVariationDrift) {
  const auto lat = make_lattice(5, 1.0, 3.0);
  const auto X = run(coeffs(0, 1, 0), lat, -0.25);
  for (int k = 0; k <= 5; ++k) {
    const auto qv = lat.QV(k);
    const auto x = X.at(k);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(x[i], -0.25 + qv[i], 1e-14);
  }
}

TEST(Forward, UnitDiffusionReproducesB) {
  const auto lat = make_lattice(5, 1.0, 3.0);
  const auto X = run(coeffs(0, 0, 1), lat, 0.0);
  for (int k = 0; k <= 5; ++k) {
    const auto b = lat.B(k);
    const auto x = X.at(k);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(x[i], b[i], 1e-14);
  }
}

TEST(Forward, LeftEndpointEvaluationAlongInput) {
  // b(t, x) = t - x, sigma(t, x) = 1 + x^2/4 evaluated along an input U.
  const auto lat = make_lattice(3, 1.0, 2.0);
  Coefficients c{{"b", [](double t, double x) { return t - x; }, true},
                 {"zero", [](double, double) { return 0.0; }, false},
                 {"s", [](double, double x) { return 1.0 + 0.25 * x * x; }, true},
                 1.0};
  const auto U = sp::ProcessOnLattice::from_nodes(lat, [](double t, double b, double qv) { return b + t * qv; });
  const double init[] = {0.3};
  const auto X = integrate_forward(c, lat, U, 0, 3, init);
  const double dt = lat.grid().dt();
  for (int k = 0; k < 3; ++k) {
    const double t = lat.grid().time(k);
    const auto x = X.at(k + 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const std::size_t p = gexp::parent_of(i);
      const double u = U.at(k)[p];
      const double db = lat.B(k + 1)[i] - lat.B(k)[p];
      EXPECT_NEAR(x[i], X.at(k)[p] + (t - u) * dt + (1.0 + 0.25 * u * u) * db, 1e-14);
    }
  }
}

TEST(Forward, SubintervalStartsFromGivenValues) {
  const auto lat = make_lattice(4, 1.0, 2.0);
  const sp::ProcessOnLattice U(2, 4, 0.0);
  std::vector<double> init(gexp::nodes_at(2));
  for (std::size_t i = 0; i < init.size(); ++i) init[i] = static_cast<double>(i);
  const auto X = integrate_forward(coeffs(1, 0, 0), lat, U, 2, 4, init);
  EXPECT_EQ(X.first_step(), 2);
  EXPECT_EQ(X.last_step(), 4);
  for (std::size_t i = 0; i < gexp::nodes_at(4); ++i) {
    EXPECT_NEAR(X.at(4)[i], static_cast<double>(gexp::ancestor_of(i, 4, 2)) + 0.5, 1e-14);
  }
}

TEST(Forward, RejectsBadRanges) {
  const auto lat = make_lattice(3, 1.0, 2.0);
  const sp::ProcessOnLattice U(0, 3, 0.0);
  const double init[] = {0.0};
  EXPECT_THROW(integrate_forward(coeffs(0, 0, 1), lat, U, 0, 4, init), PreconditionError);
  EXPECT_THROW(integrate_forward(coeffs(0, 0, 1), lat, U, 2, 1, init), PreconditionError);
  EXPECT_THROW(integrate_forward(coeffs(0, 0, 1), lat, U, 1, 3, init), PreconditionError);
  const sp::ProcessOnLattice short_input(0, 1, 0.0);
  EXPECT_THROW(integrate_forward(coeffs(0, 0, 1), lat, short_input, 0, 3, init), PreconditionError);
}

TEST(Coefficients, LipschitzSpotCheck) {
  Coefficients ok{{"ou", [](double, double x) { return 2.0 * (1.0 - x); }, true}, constant(0), constant(1), 2.0};
  EXPECT_NO_THROW(validate_coefficients(ok, 1.0));
  ok.kappa = 1.5;
  EXPECT_THROW(validate_coefficients(ok, 1.0), PreconditionError);
  Coefficients liar{constant(0), constant(0), {"s", [](double, double x) { return 1.0 + 0.1 * x; }, false}, 1.0};
  EXPECT_THROW(validate_coefficients(liar, 1.0), PreconditionError);
}
