#pragma once

#include <functional>
#include <string>

namespace gmr::sp {

/// Loss function l(t, x) with its declared regularity constants:
///
///   c_l |x - y| <= |l(t,x) - l(t,y)| <= C_l |x - y|
///   |l(t,x) - l(s,x)| <= F(|t - s|)
///   |l(t,x)| <= kappa_growth (1 + |x|)
///
/// and l strictly increasing in x. Root brackets and the stability constants
/// are derived from c_l and C_l, so the declarations must be honest;
/// validate_loss spot-checks them.
struct LossSpec {
  std::string name;
  std::function<double(double t, double x)> l;
  double c_l = 1.0;
  double C_l = 1.0;
  std::function<double(double delta)> F = [](double) { return 0.0; };
  double kappa_growth = 1.0;
  /// Continuous bounded derivatives up to order (1, 2).
  bool smooth = false;

  double operator()(double t, double x) const { return l(t, x); }
};

/// Sampling box for validate_loss.
struct LossBox {
  double t_min = 0.0;
  double t_max = 1.0;
  double x_min = -10.0;
  double x_max = 10.0;
  int nt = 50;
  int nx = 200;
};

/// Throws PreconditionError naming the first violated declaration.
void validate_loss(const LossSpec& loss, const LossBox& box = {});

}  // namespace gmr::sp
