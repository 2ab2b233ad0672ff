#include "gmr/sp/roots.hpp"

namespace gmr::sp {

BisectionResult bisect_increasing(const std::function<double(double)>& f, double lo, double hi, double tol) {
  BisectionResult r{lo, hi, 0};
  while (r.hi - r.lo > tol) {
    const double mid = r.lo + 0.5 * (r.hi - r.lo);
    if (mid <= r.lo || mid >= r.hi) break;
    if (f(mid) >= 0.0) {
      r.hi = mid;
    } else {
      r.lo = mid;
    }
    ++r.iterations;
  }
  return r;
}

}  // namespace gmr::sp
