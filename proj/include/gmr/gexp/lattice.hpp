#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gmr/gexp/params.hpp"

namespace gmr::gexp {

enum class Vol : std::uint8_t { Low = 0, High = 1 };
enum class Sign : std::uint8_t { Plus = 0, Minus = 1 };

inline constexpr int kDefaultEnumerationCap = 10;

// Node layout: the depth-k nodes are indexed 0..4^k-1 and the children of
// node i are 4i + 2*vol + sign. The index therefore encodes the full history
// of (vol, sign) choices, two bits per step, oldest choice in the high bits.

constexpr std::size_t nodes_at(int depth) { return std::size_t{1} << (2 * depth); }

constexpr std::size_t child_of(std::size_t node, Vol vol, Sign sign) {
  return 4 * node + 2 * static_cast<std::size_t>(vol) + static_cast<std::size_t>(sign);
}

constexpr std::size_t parent_of(std::size_t node) { return node >> 2; }

constexpr std::size_t ancestor_of(std::size_t node, int depth, int ancestor_depth) {
  return node >> (2 * (depth - ancestor_depth));
}

/// Choice taken on the last step into `node` (node must have depth >= 1).
constexpr Vol vol_of(std::size_t node) { return static_cast<Vol>((node >> 1) & 1U); }
constexpr Sign sign_of(std::size_t node) { return static_cast<Sign>(node & 1U); }

/// Returns k such that size == 4^k, or -1.
int depth_for_size(std::size_t size);

/// Non-recombining tree of adapted (vol, sign) choices carrying the canonical
/// process B and its quadratic variation at every node.
class PathLattice {
 public:
  PathLattice(const GParams& params, const TimeGrid& grid, int enumeration_cap = kDefaultEnumerationCap);

  const GParams& params() const { return params_; }
  const TimeGrid& grid() const { return grid_; }
  int depth() const { return grid_.n_steps(); }
  std::size_t node_count(int depth) const { return nodes_at(depth); }

  std::span<const double> B(int depth) const { return b_.at(depth); }
  std::span<const double> QV(int depth) const { return qv_.at(depth); }

  double sigma(Vol v) const { return v == Vol::High ? sigma_high_ : sigma_low_; }
  /// sigma^2 dt for one step under the given volatility.
  double variance_step(Vol v) const { return v == Vol::High ? var_high_dt_ : var_low_dt_; }
  /// sign * sigma * sqrt(dt) for one step.
  double increment(Vol v, Sign s) const;

 private:
  GParams params_;
  TimeGrid grid_;
  double sigma_low_;
  double sigma_high_;
  double sqrt_dt_;
  double var_low_dt_;
  double var_high_dt_;
  std::vector<std::vector<double>> b_;
  std::vector<std::vector<double>> qv_;
};

/// Throws SizeError when n_steps exceeds the cap.
PathLattice build_lattice(const GParams& params, const TimeGrid& grid, int enumeration_cap = kDefaultEnumerationCap);

}  // namespace gmr::gexp
