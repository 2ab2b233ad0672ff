#include "gmr/gexp/pde.hpp"

#include <cmath>
#include <sstream>

#include "gmr/errors.hpp"
#include "gmr/kernels/kernels.hpp"

namespace gmr::gexp {
namespace {

// Half-widths below this many standard deviations let the terminal data
// feel the artificial boundary.
constexpr double kMinSafeWidthSd = 5.0;
constexpr double kDefaultWidthSd = 6.0;

struct Stepping {
  double dt;
  int steps;
};

Stepping choose_steps(double duration, const GParams& params, double dx, double requested_dt) {
  const double bound = dx * dx / params.sigma_high_sq;
  if (requested_dt > 0.0) {
    if (requested_dt > bound * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "explicit scheme unstable: dt = " << requested_dt << " exceeds dx^2/sigma_high_sq = " << bound;
      throw StabilityError(msg.str());
    }
    const int steps = static_cast<int>(std::ceil(duration / requested_dt - 1e-9));
    return {duration / steps, steps};
  }
  const int steps = static_cast<int>(std::ceil(duration / bound - 1e-9));
  return {duration / steps, steps};
}

std::size_t half_points(double half_width, double dx) {
  return static_cast<std::size_t>(std::ceil(half_width / dx - 1e-9));
}

void extrapolate_boundaries(std::vector<double>& u) {
  const std::size_t n = u.size();
  u[0] = 2.0 * u[1] - u[2];
  u[n - 1] = 2.0 * u[n - 2] - u[n - 3];
}

// Marches u backward over `steps` explicit steps in place.
void march(std::vector<double>& u, const GParams& params, double dx, const Stepping& s) {
  const kernels::HeatCoefficients coef{0.5 * params.sigma_low_sq * s.dt / (dx * dx),
                                       0.5 * params.sigma_high_sq * s.dt / (dx * dx)};
  std::vector<double> next(u.size());
  for (int m = 0; m < s.steps; ++m) {
    kernels::parallel::heat_step(u, next, coef);
    extrapolate_boundaries(next);
    u.swap(next);
  }
}

// Serial copy for use inside an outer parallel loop.
void march_serial(std::vector<double>& u, const GParams& params, double dx, const Stepping& s) {
  const kernels::HeatCoefficients coef{0.5 * params.sigma_low_sq * s.dt / (dx * dx),
                                       0.5 * params.sigma_high_sq * s.dt / (dx * dx)};
  std::vector<double> next(u.size());
  for (int m = 0; m < s.steps; ++m) {
    kernels::serial::heat_step(u, next, coef);
    extrapolate_boundaries(next);
    u.swap(next);
  }
}

void check_grid(const PdeGrid& grid) {
  if (!(grid.dx > 0.0)) throw PreconditionError("PDE grid spacing dx must be positive");
  if (grid.half_width < 0.0) throw PreconditionError("PDE half width must be nonnegative");
}

double resolve_width(const PdeGrid& grid, const GParams& params, double duration, double dx,
                     std::vector<std::string>& warnings) {
  const double sd = params.sigma_high() * std::sqrt(duration);
  const double width = grid.half_width > 0.0 ? grid.half_width : kDefaultWidthSd * sd;
  if (width < kMinSafeWidthSd * sd) {
    std::ostringstream msg;
    msg << "domain half width " << width << " is below " << kMinSafeWidthSd
        << " sigma_high sqrt(T); terminal data reaches the boundary";
    warnings.push_back(msg.str());
  }
  if (half_points(width, dx) < 2) throw PreconditionError("PDE domain needs at least two cells per side");
  return width;
}

}  // namespace

PdeSolution pde_g_heat_solve(const std::function<double(double)>& phi, const GParams& params, double horizon,
                             const PdeGrid& grid) {
  params.validate();
  check_grid(grid);
  if (!(horizon > 0.0)) throw PreconditionError("PDE horizon must be positive");

  PdeSolution out;
  const double width = resolve_width(grid, params, horizon, grid.dx, out.warnings);
  const Stepping s = choose_steps(horizon, params, grid.dx, grid.dt);
  const std::size_t half = half_points(width, grid.dx);

  out.x.resize(2 * half + 1);
  out.u.resize(2 * half + 1);
  for (std::size_t i = 0; i < out.x.size(); ++i) {
    out.x[i] = (static_cast<double>(i) - static_cast<double>(half)) * grid.dx;
    out.u[i] = phi(out.x[i]);
  }
  march(out.u, params, grid.dx, s);
  out.value_at_origin = out.u[half];
  out.dt = s.dt;
  out.time_steps = s.steps;
  return out;
}

NestedPdeResult pde_nested_expectation(const std::function<double(double, double)>& phi, double t1,
                                       const GParams& params, double horizon, const PdeGrid& grid) {
  params.validate();
  check_grid(grid);
  if (!(horizon > 0.0)) throw PreconditionError("PDE horizon must be positive");
  if (t1 < 0.0 || t1 > horizon) throw PreconditionError("monitoring time t1 must lie in [0, T]");

  NestedPdeResult out;
  const double dx = grid.dx;
  const double outer_width = resolve_width(grid, params, horizon, dx, out.warnings);
  const std::size_t outer_half = half_points(outer_width, dx);
  const auto outer_n = static_cast<std::ptrdiff_t>(2 * outer_half + 1);

  std::vector<double> u1(static_cast<std::size_t>(outer_n));
  const double inner_duration = horizon - t1;
  if (inner_duration <= 0.0) {
    for (std::ptrdiff_t i = 0; i < outer_n; ++i) {
      const double x1 = (static_cast<double>(i) - static_cast<double>(outer_half)) * dx;
      u1[i] = phi(x1, x1);
    }
  } else {
    PdeGrid inner_grid = grid;
    inner_grid.half_width = 0.0;
    const double inner_width = resolve_width(inner_grid, params, inner_duration, dx, out.warnings);
    const std::size_t inner_half = half_points(inner_width, dx);
    const Stepping s = choose_steps(inner_duration, params, dx, grid.dt);

    // Each inner solve is independent and writes one slot of u1.
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < outer_n; ++i) {
      const double x1 = (static_cast<double>(i) - static_cast<double>(outer_half)) * dx;
      std::vector<double> u(2 * inner_half + 1);
      for (std::size_t j = 0; j < u.size(); ++j) {
        u[j] = phi(x1, x1 + (static_cast<double>(j) - static_cast<double>(inner_half)) * dx);
      }
      march_serial(u, params, dx, s);
      u1[i] = u[inner_half];
    }
  }

  if (t1 > 0.0) {
    const Stepping s = choose_steps(t1, params, dx, grid.dt);
    march(u1, params, dx, s);
  }
  out.value = u1[outer_half];
  return out;
}

}  // namespace gmr::gexp
