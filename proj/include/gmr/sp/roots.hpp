#pragma once

#include <functional>

namespace gmr::sp {

struct BisectionResult {
  double lo = 0.0;  // f(lo) < 0
  double hi = 0.0;  // f(hi) >= 0
  int iterations = 0;
};

/// Bisection for an increasing f on a bracket with f(lo) < 0 <= f(hi).
/// Stops when hi - lo <= tol or the bracket can no longer be split in
/// floating point. The caller establishes the bracket.
BisectionResult bisect_increasing(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace gmr::sp
