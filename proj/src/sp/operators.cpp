#include "gmr/sp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gmr/errors.hpp"
#include "gmr/gexp/expectation.hpp"
#include "gmr/sp/roots.hpp"

namespace gmr::sp {
namespace {

constexpr int kMaxExpansions = 64;

void check_tol(double tol) {
  if (!(tol > 0.0)) throw PreconditionError("root tolerance must be positive");
}

[[noreturn]] void no_bracket(const LossSpec& loss, const char* where, double lo, double hi) {
  std::ostringstream msg;
  msg << where << ": no sign change on [" << lo << ", " << hi << "] for loss '" << loss.name
      << "'; check the declared c_l = " << loss.c_l << " and C_l = " << loss.C_l;
  throw BracketError(msg.str());
}

// Largest power of two not above tol. Both L operators search the grid
// spacing * Z and return its smallest point satisfying the constraint, so the
// result does not depend on the bracket and is exactly antitone in X.
double grid_spacing(double tol) { return std::ldexp(1.0, std::ilogb(tol)); }

// Smallest spacing * 2^m (m >= 0) at or above x.
double dyadic_cover(double x, double spacing) {
  double w = spacing;
  while (w < x) w *= 2.0;
  return w;
}

}  // namespace

double shifted_loss_expectation(double t, double x, const gexp::PathFunctional& dist, const LossSpec& loss) {
  return gexp::sup_expectation_of(dist.values, [&](double v) { return loss.l(t, x + v); });
}

double loss_L(double t, const gexp::PathFunctional& dist, const gexp::PathLattice& lattice, const LossSpec& loss,
              double tol) {
  check_tol(tol);
  gexp::check_functional(lattice, dist);
  auto f = [&](double x) { return shifted_loss_expectation(t, x, dist, loss); };
  const double f0 = f(0.0);
  if (f0 >= 0.0) return 0.0;
  // E[l(t, x + X)] >= f0 + c_l x for x >= 0.
  const double g = grid_spacing(tol);
  const double hi = dyadic_cover(-f0 / loss.c_l + tol, g);
  if (f(hi) < 0.0) no_bracket(loss, "loss_L", 0.0, hi);
  return bisect_increasing(f, 0.0, hi, g).hi;
}

double loss_L_signed(double t, const gexp::PathFunctional& dist, const gexp::PathLattice& lattice,
                     const LossSpec& loss, double tol) {
  check_tol(tol);
  gexp::check_functional(lattice, dist);
  auto f = [&](double x) { return shifted_loss_expectation(t, x, dist, loss); };
  const double f0 = f(0.0);
  if (f0 == 0.0) return 0.0;
  const double g = grid_spacing(tol);
  double w = dyadic_cover(std::abs(f0) / loss.c_l + tol, g);
  for (int i = 0; i < kMaxExpansions; ++i, w *= 2.0) {
    if (f(-w) < 0.0 && f(w) >= 0.0) return bisect_increasing(f, -w, w, g).hi;
  }
  no_bracket(loss, "loss_L_signed", -w, w);
}

double rho(double t, const gexp::PathFunctional& dist, const gexp::PathLattice& lattice, const LossSpec& loss,
           double tol) {
  return loss_L_signed(t, dist, lattice, loss, tol);
}

double map_H(double t, double z, const gexp::PathFunctional& Y, const gexp::PathLattice& lattice,
             const LossSpec& loss) {
  gexp::check_functional(lattice, Y);
  const double mean = gexp::sup_expectation_of(Y.values);
  return gexp::sup_expectation_of(Y.values, [&](double v) { return loss.l(t, v - mean + z); });
}

double map_H_inverse(double t, double z, const gexp::PathFunctional& Y, const gexp::PathLattice& lattice,
                     const LossSpec& loss, double tol) {
  check_tol(tol);
  gexp::check_functional(lattice, Y);
  const double mean = gexp::sup_expectation_of(Y.values);
  auto g = [&](double zb) {
    return gexp::sup_expectation_of(Y.values, [&](double v) { return loss.l(t, v - mean + zb); }) - z;
  };
  const double d = -g(0.0);
  if (d == 0.0) return 0.0;
  // Slope of H lies in [c_l, C_l], so the root lies between d/C_l and d/c_l.
  const double a = d / loss.C_l;
  const double b = d / loss.c_l;
  double lo = std::min(a, b) - tol;
  double hi = std::max(a, b) + tol;
  for (int i = 0; i < kMaxExpansions; ++i) {
    const bool lo_ok = g(lo) < 0.0;
    const bool hi_ok = g(hi) >= 0.0;
    if (lo_ok && hi_ok) return bisect_increasing(g, lo, hi, tol).hi;
    const double width = hi - lo;
    if (!lo_ok) lo -= width;
    if (!hi_ok) hi += width;
  }
  no_bracket(loss, "map_H_inverse", lo, hi);
}

}  // namespace gmr::sp
