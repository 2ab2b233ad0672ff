#pragma once

// Shared fixtures for unit and acceptance tests: lattice builders, the
// loss families, a seeded generator and a brute-force policy enumerator
// used as an independent oracle for the backward induction.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "gmr/gexp/functional.hpp"
#include "gmr/gexp/lattice.hpp"
#include "gmr/harness/config.hpp"
#include "gmr/harness/registry.hpp"
#include "gmr/sp/loss.hpp"

namespace gmr::testing {

inline gexp::PathLattice make_lattice(int n, double lo, double hi, double horizon = 1.0) {
  return gexp::build_lattice(gexp::GParams::make(lo, hi, lo == hi), gexp::TimeGrid(horizon, n));
}

/// l(t, x) = x - (c0 + c1 t).
inline sp::LossSpec linear_loss(double c0, double c1) {
  return harness::make_loss("linear", {{"c0", c0}, {"c1", c1}});
}

/// l(t, x) = 2x + atan(x) - (c0 + c1 t).
inline sp::LossSpec arctan_loss(double c0, double c1) {
  return harness::make_loss("arctan_shift", {{"c0", c0}, {"c1", c1}});
}

/// l(t, x) = x + 0.1 sin(x) - (c0 + c1 t).
inline sp::LossSpec sin_loss(double c0, double c1) {
  return harness::make_loss("smooth_sin", {{"c0", c0}, {"c1", c1}});
}

/// Problem section with the given components and everything else at its
/// defaults.
inline harness::ProblemSection problem_section(double x0, int n, harness::Component b, harness::Component sigma,
                                               harness::Component loss, double lo = 1.0, double hi = 2.0) {
  harness::ProblemSection p;
  p.x0 = x0;
  p.n_steps = n;
  p.sigma_low_sq = lo;
  p.sigma_high_sq = hi;
  p.classical_limit = lo == hi;
  p.b = std::move(b);
  p.sigma = std::move(sigma);
  p.loss = std::move(loss);
  return p;
}

inline sde::MRGSDEProblem build(const harness::ProblemSection& section) {
  harness::ExperimentConfig c;
  c.problem = section;
  harness::validate_config(c);
  return harness::build_problem(c);
}

/// Seeded source of doubles. Built on the raw mt19937_64 stream so the
/// values do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  /// Multiple of 2^-bits in [-range, range]; sums of such values stay exact.
  double dyadic(double range, int bits = 24) {
    const double scale = std::ldexp(1.0, bits);
    return std::round(uniform(-range, range) * scale) / scale;
  }

 private:
  std::mt19937_64 engine_;
};

/// Random path-dependent functional at `depth`: node values drawn from rng,
/// dyadic so that every average on the tree is exact.
inline gexp::PathFunctional random_functional(Rng& rng, int depth, double range = 4.0) {
  gexp::PathFunctional xi{depth, std::vector<double>(gexp::nodes_at(depth))};
  for (auto& v : xi.values) v = rng.dyadic(range);
  return xi;
}

/// max (or min) over every adapted policy of its classical expectation.
///
/// A policy fixes the volatility at each step as a function of the signs
/// seen so far (the earlier volatilities are themselves determined by those
/// signs), so there are 2^(2^n - 1) of them. Each policy's expectation is a
/// flat average over the 2^n sign sequences.
inline double enumerate_policies(const gexp::PathFunctional& xi, bool want_max = true) {
  const int n = xi.depth;
  const std::uint64_t slots = (std::uint64_t{1} << n) - 1;  // sign histories of length < n
  const std::uint64_t policies = std::uint64_t{1} << slots;
  double best = want_max ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  for (std::uint64_t policy = 0; policy < policies; ++policy) {
    double sum = 0.0;
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << n); ++signs) {
      std::size_t node = 0;
      std::uint64_t history = 0;  // heap index of the sign history
      for (int k = 0; k < n; ++k) {
        const auto vol = static_cast<gexp::Vol>((policy >> history) & 1U);
        const auto sign = static_cast<gexp::Sign>((signs >> (n - 1 - k)) & 1U);
        node = gexp::child_of(node, vol, sign);
        history = 2 * history + 1 + static_cast<std::uint64_t>(sign);
      }
      sum += xi.values[node];
    }
    const double e = sum / static_cast<double>(std::uint64_t{1} << n);
    best = want_max ? std::max(best, e) : std::min(best, e);
  }
  return best;
}

}  // namespace gmr::testing
