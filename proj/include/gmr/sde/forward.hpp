#pragma once

#include <span>

#include "gmr/gexp/lattice.hpp"
#include "gmr/sde/coefficients.hpp"
#include "gmr/sp/process.hpp"

namespace gmr::sde {

/// Euler-Maruyama on every scenario of the lattice, with coefficients
/// evaluated along `input`:
///
///   X_{k+1} = X_k + b(t_k, U_k) dt + h(t_k, U_k) sigma_k^2 dt + sigma(t_k, U_k) dB_k,
///   dB_k = sign_k sigma_k sqrt(dt).
///
/// `initial` holds the depth-start_step values. `input` must cover
/// [start_step, end_step - 1].
sp::ProcessOnLattice integrate_forward(const Coefficients& coeffs, const gexp::PathLattice& driver,
                                       const sp::ProcessOnLattice& input, int start_step, int end_step,
                                       std::span<const double> initial);

}  // namespace gmr::sde
