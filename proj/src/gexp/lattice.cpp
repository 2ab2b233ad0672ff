#include "gmr/gexp/lattice.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "gmr/errors.hpp"
#include "gmr/kernels/kernels.hpp"

namespace gmr::gexp {

int depth_for_size(std::size_t size) {
  if (size == 0 || !std::has_single_bit(size)) return -1;
  const int bits = std::countr_zero(size);
  return bits % 2 == 0 ? bits / 2 : -1;
}

PathLattice::PathLattice(const GParams& params, const TimeGrid& grid, int enumeration_cap)
    : params_(params), grid_(grid) {
  params_.validate();
  const int n = grid_.n_steps();
  if (n > enumeration_cap) {
    throw SizeError("lattice with n_steps = " + std::to_string(n) + " needs 4^" + std::to_string(n) + " = " +
                    std::to_string(static_cast<double>(nodes_at(n))) + " leaf paths, above the enumeration cap " +
                    "of n_steps <= " + std::to_string(enumeration_cap));
  }
  sigma_low_ = params_.sigma_low();
  sigma_high_ = params_.sigma_high();
  sqrt_dt_ = std::sqrt(grid_.dt());
  var_low_dt_ = params_.sigma_low_sq * grid_.dt();
  var_high_dt_ = params_.sigma_high_sq * grid_.dt();

  const kernels::StepIncrements inc{sigma_low_ * sqrt_dt_, sigma_high_ * sqrt_dt_, var_low_dt_, var_high_dt_};
  b_.resize(n + 1);
  qv_.resize(n + 1);
  b_[0].assign(1, 0.0);
  qv_[0].assign(1, 0.0);
  for (int k = 0; k < n; ++k) {
    b_[k + 1].resize(nodes_at(k + 1));
    qv_[k + 1].resize(nodes_at(k + 1));
    kernels::parallel::extend_lattice(b_[k], qv_[k], inc, b_[k + 1], qv_[k + 1]);
  }
}

double PathLattice::increment(Vol v, Sign s) const {
  const double mag = sigma(v) * sqrt_dt_;
  return s == Sign::Plus ? mag : -mag;
}

PathLattice build_lattice(const GParams& params, const TimeGrid& grid, int enumeration_cap) {
  return PathLattice(params, grid, enumeration_cap);
}

}  // namespace gmr::gexp
