#include "gmr/sde/forward.hpp"

#include <algorithm>

#include "gmr/errors.hpp"
#include "gmr/kernels/kernels.hpp"

namespace gmr::sde {

sp::ProcessOnLattice integrate_forward(const Coefficients& coeffs, const gexp::PathLattice& driver,
                                       const sp::ProcessOnLattice& input, int start_step, int end_step,
                                       std::span<const double> initial) {
  if (start_step < 0 || end_step < start_step || end_step > driver.depth()) {
    throw PreconditionError("integrate_forward: step range outside the lattice");
  }
  if (end_step > start_step && (!input.covers(start_step) || !input.covers(end_step - 1))) {
    throw PreconditionError("integrate_forward: input process does not cover the step range");
  }
  if (initial.size() != gexp::nodes_at(start_step)) {
    throw PreconditionError("integrate_forward: initial values do not match the start depth");
  }

  using gexp::Sign;
  using gexp::Vol;
  const kernels::StepIncrements inc{driver.increment(Vol::Low, Sign::Plus), driver.increment(Vol::High, Sign::Plus),
                                    driver.variance_step(Vol::Low), driver.variance_step(Vol::High)};
  const double dt = driver.grid().dt();

  sp::ProcessOnLattice out(start_step, end_step);
  std::copy(initial.begin(), initial.end(), out.at(start_step).begin());
  for (int k = start_step; k < end_step; ++k) {
    const double t = driver.grid().time(k);
    kernels::parallel::euler_step(
        out.at(k), input.at(k), dt, inc, [&](double u) { return coeffs.b.f(t, u); },
        [&](double u) { return coeffs.h.f(t, u); }, [&](double u) { return coeffs.sigma.f(t, u); }, out.at(k + 1));
  }
  return out;
}

}  // namespace gmr::sde
