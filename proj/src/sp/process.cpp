#include "gmr/sp/process.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmr/errors.hpp"

namespace gmr::sp {

ProcessOnLattice::ProcessOnLattice(int first_step, int last_step, double fill) : first_(first_step) {
  if (first_step < 0 || last_step < first_step) throw PreconditionError("invalid process step range");
  levels_.reserve(static_cast<std::size_t>(last_step - first_step + 1));
  for (int k = first_step; k <= last_step; ++k) levels_.emplace_back(gexp::nodes_at(k), fill);
}

std::span<const double> ProcessOnLattice::at(int step) const {
  if (!covers(step)) throw PreconditionError("process has no values at step " + std::to_string(step));
  return levels_[static_cast<std::size_t>(step - first_)];
}

std::span<double> ProcessOnLattice::at(int step) {
  if (!covers(step)) throw PreconditionError("process has no values at step " + std::to_string(step));
  return levels_[static_cast<std::size_t>(step - first_)];
}

gexp::PathFunctional ProcessOnLattice::functional(int step) const {
  const auto v = at(step);
  return {step, std::vector<double>(v.begin(), v.end())};
}

double sup_distance(const ProcessOnLattice& a, const ProcessOnLattice& b) {
  const int first = std::max(a.first_step(), b.first_step());
  const int last = std::min(a.last_step(), b.last_step());
  double d = 0.0;
  for (int k = first; k <= last; ++k) {
    const auto x = a.at(k);
    const auto y = b.at(k);
    for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  }
  return d;
}

}  // namespace gmr::sp
