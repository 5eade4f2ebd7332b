#pragma once

#include <functional>

namespace gyrokit {

struct RootResult {
  double x = 0.0;         ///< abscissa of the root
  double f = 0.0;         ///< residual f(x)
  int iterations = 0;
};

/// Brent's method on [a, b]; requires f(a) and f(b) to have opposite signs.
/// `xtol` is an absolute tolerance on x (scaled internally by |x|+1 via rtol).
RootResult brent_root(const std::function<double(double)>& f, double a, double b,
                      double xtol = 1e-14, double rtol = 1e-13, int max_iter = 200);

struct MinResult {
  double x = 0.0;
  double f = 0.0;
  int iterations = 0;
};

/// Brent's parabolic/golden-section minimizer on [a, b].
MinResult brent_min(const std::function<double(double)>& f, double a, double b,
                    double xtol = 1e-12, int max_iter = 200);

/// Walk outward from `x0` multiplicatively (factor `step` per move, growing by
/// `grow` per move) until f changes sign relative to f(x0); direction > 0 walks
/// up, < 0 walks down. Returns the bracketing pair via out-params.
/// Throws NumericsError if no sign change is found before `limit`.
void bracket_outward(const std::function<double(double)>& f, double x0, int direction,
                     double step, double grow, double limit, double& lo, double& hi);

}  // namespace gyrokit
