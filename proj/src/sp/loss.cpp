#include "gmr/sp/loss.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "gmr/errors.hpp"

namespace gmr::sp {
namespace {

constexpr double kRel = 1e-9;

double sample(double lo, double hi, int i, int n) { return n <= 1 ? lo : lo + (hi - lo) * i / (n - 1); }

[[noreturn]] void fail(const LossSpec& loss, const std::string& what) {
  throw PreconditionError("loss '" + loss.name + "': " + what);
}

}  // namespace

void validate_loss(const LossSpec& loss, const LossBox& box) {
  if (!loss.l) fail(loss, "no loss function");
  if (!(loss.c_l > 0.0)) fail(loss, "c_l must be positive");
  if (loss.C_l < loss.c_l) fail(loss, "C_l must be at least c_l");
  if (!(loss.kappa_growth > 0.0)) fail(loss, "kappa_growth must be positive");
  if (!loss.F) fail(loss, "no time modulus F");
  if (std::abs(loss.F(0.0)) > 1e-15) fail(loss, "time modulus must satisfy F(0) = 0");
  if (box.nt < 1 || box.nx < 2 || !(box.x_max > box.x_min) || box.t_max < box.t_min) {
    fail(loss, "degenerate validation box");
  }

  const double span_t = box.t_max - box.t_min;
  double prev_f = 0.0;
  for (int i = 0; i < box.nt; ++i) {
    const double f = loss.F(sample(0.0, span_t, i, box.nt));
    if (f < prev_f || f < 0.0) fail(loss, "time modulus F must be nonnegative and nondecreasing");
    prev_f = f;
  }

  std::vector<double> ts(box.nt);
  std::vector<double> xs(box.nx);
  for (int i = 0; i < box.nt; ++i) ts[i] = sample(box.t_min, box.t_max, i, box.nt);
  for (int j = 0; j < box.nx; ++j) xs[j] = sample(box.x_min, box.x_max, j, box.nx);

  std::vector<std::vector<double>> values(box.nt, std::vector<double>(box.nx));
  for (int i = 0; i < box.nt; ++i) {
    for (int j = 0; j < box.nx; ++j) values[i][j] = loss.l(ts[i], xs[j]);
  }

  for (int i = 0; i < box.nt; ++i) {
    for (int j = 0; j < box.nx; ++j) {
      const double v = values[i][j];
      const double eps = 1e-12 * (1.0 + std::abs(v));
      if (std::abs(v) > loss.kappa_growth * (1.0 + std::abs(xs[j])) * (1.0 + kRel) + eps) {
        std::ostringstream msg;
        msg << "growth bound kappa_growth = " << loss.kappa_growth << " violated at (t, x) = (" << ts[i] << ", "
            << xs[j] << ")";
        fail(loss, msg.str());
      }
      if (j + 1 < box.nx) {
        const double h = xs[j + 1] - xs[j];
        const double d = values[i][j + 1] - v;
        if (!(d > 0.0)) fail(loss, "l must be strictly increasing in x");
        if (d < loss.c_l * h * (1.0 - kRel) - eps || d > loss.C_l * h * (1.0 + kRel) + eps) {
          std::ostringstream msg;
          msg << "difference quotient " << d / h << " outside declared [c_l, C_l] = [" << loss.c_l << ", "
              << loss.C_l << "] near (t, x) = (" << ts[i] << ", " << xs[j] << ")";
          fail(loss, msg.str());
        }
      }
    }
  }

  for (int a = 0; a < box.nt; ++a) {
    for (int b = a + 1; b < box.nt; ++b) {
      const double bound = loss.F(ts[b] - ts[a]);
      for (int j = 0; j < box.nx; ++j) {
        const double d = std::abs(values[b][j] - values[a][j]);
        if (d > bound * (1.0 + kRel) + 1e-12 * (1.0 + std::abs(values[a][j]))) {
          std::ostringstream msg;
          msg << "time modulus violated between t = " << ts[a] << " and t = " << ts[b] << " at x = " << xs[j];
          fail(loss, msg.str());
        }
      }
    }
  }
}

}  // namespace gmr::sp
