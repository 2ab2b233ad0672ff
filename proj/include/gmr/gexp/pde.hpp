#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gmr/gexp/params.hpp"

namespace gmr::gexp {

/// Grid for the explicit scheme. Zero fields select the defaults:
/// half_width = 6 sigma_high sqrt(T), dt = T / ceil(T sigma_high^2 / dx^2)
/// (the largest step at or below the monotonicity bound).
struct PdeGrid {
  double dx = 0.02;
  double half_width = 0.0;
  double dt = 0.0;
};

struct PdeSolution {
  double value_at_origin = 0.0;
  std::vector<double> x;  // spatial grid, symmetric about 0
  std::vector<double> u;  // u(0, x)
  double dt = 0.0;
  int time_steps = 0;
  std::vector<std::string> warnings;
};

/// Solves d_t u + G(d_xx u) = 0 backward from u(T, x) = phi(x) with an
/// explicit monotone scheme; d_xx u = 0 on the two boundary columns.
/// Throws StabilityError if dt > dx^2 / sigma_high_sq.
PdeSolution pde_g_heat_solve(const std::function<double(double)>& phi, const GParams& params, double horizon,
                             const PdeGrid& grid = {});

struct NestedPdeResult {
  double value = 0.0;
  std::vector<std::string> warnings;
};

/// G-expectation of phi(B_{t1}, B_T) via the two-level recursion: for each
/// x1 on the outer grid solve the inner equation on [t1, T] with terminal
/// phi(x1, .) on a grid centred at x1 and read it at x1, then solve the outer
/// equation on [0, t1] from those values.
NestedPdeResult pde_nested_expectation(const std::function<double(double, double)>& phi, double t1,
                                       const GParams& params, double horizon, const PdeGrid& grid = {});

}  // namespace gmr::gexp
