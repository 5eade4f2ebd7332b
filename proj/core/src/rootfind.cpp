#include "gyrokit/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gyrokit/errors.hpp"

namespace gyrokit {

RootResult brent_root(const std::function<double(double)>& f, double a, double b,
                      double xtol, double rtol, int max_iter) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return {a, 0.0, 0};
  if (fb == 0.0) return {b, 0.0, 0};
  if ((fa > 0.0) == (fb > 0.0)) {
    throw NumericsError("brent_root: endpoints do not bracket a sign change");
  }

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 1; iter <= max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a; fc = fa; d = b - a; e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * rtol * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return {b, fb, iter};

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // inverse quadratic interpolation / secant
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d; d = p / q;
      } else {
        d = xm; e = d;
      }
    } else {
      d = xm; e = d;
    }
    a = b; fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  throw NumericsError("brent_root: no convergence in " + std::to_string(max_iter) +
                      " iterations");
}

MinResult brent_min(const std::function<double(double)>& f, double a, double b,
                    double xtol, int max_iter) {
  const double gold = 0.3819660112501051;
  double x = a + gold * (b - a), w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  for (int iter = 1; iter <= max_iter; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = xtol * std::abs(x) + 1e-300;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= (tol2 - 0.5 * (b - a))) return {x, fx, iter};
    bool golden = true;
    if (std::abs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (!(std::abs(p) >= std::abs(0.5 * q * etemp) || p <= q * (a - x) ||
            p >= q * (b - x))) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (xm - x >= 0.0 ? tol1 : -tol1);
        golden = false;
      }
    }
    if (golden) {
      e = (x >= xm) ? a - x : b - x;
      d = gold * e;
    }
    const double u = (std::abs(d) >= tol1) ? x + d : x + (d >= 0.0 ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw; w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx, max_iter};
}

void bracket_outward(const std::function<double(double)>& f, double x0, int direction,
                     double step, double grow, double limit, double& lo, double& hi) {
  if (step <= 1.0 || grow < 1.0) {
    throw NumericsError("bracket_outward: step must exceed 1 and grow must be >= 1");
  }
  double x_prev = x0;
  double f_prev = f(x0);
  double factor = step;
  for (int i = 0; i < 4000; ++i) {
    const double x_next = (direction > 0) ? x_prev * factor : x_prev / factor;
    if ((direction > 0 && x_next > limit) || (direction < 0 && x_next < limit)) break;
    const double f_next = f(x_next);
    if ((f_prev <= 0.0 && f_next > 0.0) || (f_prev >= 0.0 && f_next < 0.0)) {
      lo = std::min(x_prev, x_next);
      hi = std::max(x_prev, x_next);
      return;
    }
    x_prev = x_next;
    f_prev = f_next;
    factor = std::min(factor * grow, 2.0);
  }
  throw NumericsError("bracket_outward: no sign change before reaching the search limit");
}

}  // namespace gyrokit
