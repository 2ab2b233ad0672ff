#pragma once

#include <cmath>

namespace gmr::gexp {

/// Volatility band [sigma_low_sq, sigma_high_sq] of the G-function.
///
/// The band must be non-degenerate unless `classical_limit` is set, in which
/// case sigma_low_sq == sigma_high_sq is accepted and every sublinear
/// expectation collapses to the binomial-tree expectation.
struct GParams {
  double sigma_low_sq = 1.0;
  double sigma_high_sq = 2.0;
  bool classical_limit = false;

  /// Builds and validates; throws PreconditionError on a bad band.
  static GParams make(double sigma_low_sq, double sigma_high_sq, bool classical_limit = false);

  void validate() const;

  double sigma_low() const { return std::sqrt(sigma_low_sq); }
  double sigma_high() const { return std::sqrt(sigma_high_sq); }

  friend bool operator==(const GParams&, const GParams&) = default;
};

/// G(a) = 1/2 (sigma_high_sq a^+ - sigma_low_sq a^-).
double g_function(double a, const GParams& params);

/// Uniform grid 0 = t_0 < ... < t_n = T.
class TimeGrid {
 public:
  TimeGrid() = default;
  TimeGrid(double horizon, int n_steps);

  double horizon() const { return horizon_; }
  int n_steps() const { return n_steps_; }
  double dt() const { return dt_; }

  /// t_k = k dt, with t_n pinned to the horizon.
  double time(int k) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double horizon_ = 1.0;
  int n_steps_ = 1;
  double dt_ = 1.0;
};

}  // namespace gmr::gexp
