#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace fanno {

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  double bracket_width = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Brent's method on a sign-changing bracket [a, b] with fa = f(a), fb = f(b).
/// Stops when the bracket is narrower than rel_tol * |root| (plus a few ulps).
template <class F>
RootResult brent_root(F&& f, double a, double b, double fa, double fb, double rel_tol,
                      int max_iter) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  RootResult out;
  if (fa == 0.0) return {a, 0.0, 0.0, 0, true};
  if (fb == 0.0) return {b, 0.0, 0.0, 0, true};

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 1; it <= max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * rel_tol * std::abs(b);
    const double xm = 0.5 * (c - b);
    out.iterations = it;
    out.bracket_width = std::abs(c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) {
      out.root = b;
      out.residual = fb;
      out.converged = true;
      return out;
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // inverse quadratic (or secant) step
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
  }
  out.root = b;
  out.residual = fb;
  out.bracket_width = std::abs(c - b);
  return out;
}

}  // namespace fanno
