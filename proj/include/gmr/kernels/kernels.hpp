#pragma once

// Data-parallel inner loops of the library. Every kernel comes in two
// flavours with identical per-element arithmetic:
//
//   serial::   plain loops, the reference implementation kept for testing
//   parallel:: the same loops under `omp parallel for`
//
// Each output element is written by exactly one iteration and depends only
// on its own inputs, so both flavours are bitwise identical under any
// schedule. The library calls parallel::; tests compare the two.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>

namespace gmr::kernels {

inline constexpr std::ptrdiff_t kParallelThreshold = 1 << 12;

/// Value of a parent node from its four children, laid out as
/// (low,+), (low,-), (high,+), (high,-). Average over signs first, then the
/// extremum over the two volatilities.
inline double combine_sup(double low_plus, double low_minus, double high_plus, double high_minus) {
  return std::max(0.5 * (low_plus + low_minus), 0.5 * (high_plus + high_minus));
}

inline double combine_inf(double low_plus, double low_minus, double high_plus, double high_minus) {
  return std::min(0.5 * (low_plus + low_minus), 0.5 * (high_plus + high_minus));
}

/// Per-step constants for the canonical process on one lattice level.
struct StepIncrements {
  double plus_low;     // +sigma_low sqrt(dt)
  double plus_high;    // +sigma_high sqrt(dt)
  double var_low_dt;   // sigma_low^2 dt
  double var_high_dt;  // sigma_high^2 dt

  double increment(std::size_t c) const {
    const double mag = (c & 2U) ? plus_high : plus_low;
    return (c & 1U) ? -mag : mag;
  }
  double variance(std::size_t c) const { return (c & 2U) ? var_high_dt : var_low_dt; }
};

/// Explicit G-heat update coefficients: lambda = sigma^2 dt / (2 dx^2).
struct HeatCoefficients {
  double lambda_low;
  double lambda_high;
};

namespace detail {

inline double heat_point(const double* u, std::ptrdiff_t i, HeatCoefficients c) {
  const double d = u[i + 1] - 2.0 * u[i] + u[i - 1];
  return u[i] + (d > 0.0 ? c.lambda_high : c.lambda_low) * d;
}

}  // namespace detail

namespace serial {

inline void reduce_sup(std::span<const double> children, std::span<double> parents) {
  assert(children.size() == 4 * parents.size());
  const auto n = static_cast<std::ptrdiff_t>(parents.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double* c = children.data() + 4 * i;
    parents[i] = combine_sup(c[0], c[1], c[2], c[3]);
  }
}

inline void reduce_inf(std::span<const double> children, std::span<double> parents) {
  assert(children.size() == 4 * parents.size());
  const auto n = static_cast<std::ptrdiff_t>(parents.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double* c = children.data() + 4 * i;
    parents[i] = combine_inf(c[0], c[1], c[2], c[3]);
  }
}

/// reduce_sup applied to f(children) without materialising f(children).
template <class F>
void reduce_sup_mapped(std::span<const double> children, F&& f, std::span<double> parents) {
  assert(children.size() == 4 * parents.size());
  const auto n = static_cast<std::ptrdiff_t>(parents.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double* c = children.data() + 4 * i;
    parents[i] = combine_sup(f(c[0]), f(c[1]), f(c[2]), f(c[3]));
  }
}

inline void extend_lattice(std::span<const double> b_parent, std::span<const double> qv_parent,
                           const StepIncrements& inc, std::span<double> b_child, std::span<double> qv_child) {
  const auto n = static_cast<std::ptrdiff_t>(4 * b_parent.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const auto c = static_cast<std::size_t>(j) & 3U;
    b_child[j] = b_parent[j >> 2] + inc.increment(c);
    qv_child[j] = qv_parent[j >> 2] + inc.variance(c);
  }
}

/// One Euler-Maruyama step on a lattice level: for every child j of parent
/// p = j/4, x_child = x_p + b(u_p) dt + h(u_p) var_c + sigma(u_p) dB_c.
template <class Drift, class QvDrift, class Diffusion>
void euler_step(std::span<const double> x_parent, std::span<const double> u_parent, double dt,
                const StepIncrements& inc, Drift&& b, QvDrift&& h, Diffusion&& sigma, std::span<double> x_child) {
  const auto n = static_cast<std::ptrdiff_t>(4 * x_parent.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const auto c = static_cast<std::size_t>(j) & 3U;
    const double u = u_parent[j >> 2];
    x_child[j] = x_parent[j >> 2] + b(u) * dt + h(u) * inc.variance(c) + sigma(u) * inc.increment(c);
  }
}

/// Interior explicit step; boundary columns are left to the caller.
inline void heat_step(std::span<const double> u, std::span<double> out, HeatCoefficients c) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  for (std::ptrdiff_t i = 1; i + 1 < n; ++i) out[i] = detail::heat_point(u.data(), i, c);
}

}  // namespace serial

namespace parallel {

inline void reduce_sup(std::span<const double> children, std::span<double> parents) {
  assert(children.size() == 4 * parents.size());
  const auto n = static_cast<std::ptrdiff_t>(parents.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double* c = children.data() + 4 * i;
    parents[i] = combine_sup(c[0], c[1], c[2], c[3]);
  }
}

inline void reduce_inf(std::span<const double> children, std::span<double> parents) {
  assert(children.size() == 4 * parents.size());
  const auto n = static_cast<std::ptrdiff_t>(parents.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double* c = children.data() + 4 * i;
    parents[i] = combine_inf(c[0], c[1], c[2], c[3]);
  }
}

template <class F>
void reduce_sup_mapped(std::span<const double> children, F&& f, std::span<double> parents) {
  assert(children.size() == 4 * parents.size());
  const auto n = static_cast<std::ptrdiff_t>(parents.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double* c = children.data() + 4 * i;
    parents[i] = combine_sup(f(c[0]), f(c[1]), f(c[2]), f(c[3]));
  }
}

inline void extend_lattice(std::span<const double> b_parent, std::span<const double> qv_parent,
                           const StepIncrements& inc, std::span<double> b_child, std::span<double> qv_child) {
  const auto n = static_cast<std::ptrdiff_t>(4 * b_parent.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const auto c = static_cast<std::size_t>(j) & 3U;
    b_child[j] = b_parent[j >> 2] + inc.increment(c);
    qv_child[j] = qv_parent[j >> 2] + inc.variance(c);
  }
}

template <class Drift, class QvDrift, class Diffusion>
void euler_step(std::span<const double> x_parent, std::span<const double> u_parent, double dt,
                const StepIncrements& inc, Drift&& b, QvDrift&& h, Diffusion&& sigma, std::span<double> x_child) {
  const auto n = static_cast<std::ptrdiff_t>(4 * x_parent.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const auto c = static_cast<std::size_t>(j) & 3U;
    const double u = u_parent[j >> 2];
    x_child[j] = x_parent[j >> 2] + b(u) * dt + h(u) * inc.variance(c) + sigma(u) * inc.increment(c);
  }
}

inline void heat_step(std::span<const double> u, std::span<double> out, HeatCoefficients c) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 1; i < n - 1; ++i) out[i] = detail::heat_point(u.data(), i, c);
}

}  // namespace parallel

}  // namespace gmr::kernels
