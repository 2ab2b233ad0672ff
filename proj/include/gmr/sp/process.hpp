#pragma once

#include <span>
#include <vector>

#include "gmr/gexp/functional.hpp"
#include "gmr/gexp/lattice.hpp"

namespace gmr::sp {

/// Adapted process on the lattice over grid steps [first_step, last_step]:
/// one value per node at every depth in that range.
class ProcessOnLattice {
 public:
  ProcessOnLattice() = default;
  ProcessOnLattice(int first_step, int last_step, double fill = 0.0);

  int first_step() const { return first_; }
  int last_step() const { return first_ + static_cast<int>(levels_.size()) - 1; }
  bool covers(int step) const { return step >= first_step() && step <= last_step(); }

  std::span<const double> at(int step) const;
  std::span<double> at(int step);

  gexp::PathFunctional functional(int step) const;

  /// Values f(t_k, B, QV) at every node of every depth in [first, last].
  template <class F>
  static ProcessOnLattice from_nodes(const gexp::PathLattice& lattice, F&& f, int first = 0, int last = -1) {
    if (last < 0) last = lattice.depth();
    ProcessOnLattice p(first, last);
    for (int k = first; k <= last; ++k) {
      const double t = lattice.grid().time(k);
      const auto b = lattice.B(k);
      const auto qv = lattice.QV(k);
      auto out = p.at(k);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(t, b[i], qv[i]);
    }
    return p;
  }

 private:
  int first_ = 0;
  std::vector<std::vector<double>> levels_;
};

/// Deterministic function on grid steps [first_step, first_step + size - 1].
struct DeterministicPath {
  int first_step = 0;
  std::vector<double> values;

  int last_step() const { return first_step + static_cast<int>(values.size()) - 1; }
  double at(int step) const { return values.at(static_cast<std::size_t>(step - first_step)); }
  double& at(int step) { return values.at(static_cast<std::size_t>(step - first_step)); }
};

/// sup over nodes and common steps of |a - b|.
double sup_distance(const ProcessOnLattice& a, const ProcessOnLattice& b);

}  // namespace gmr::sp
