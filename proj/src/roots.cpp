#include "cmrp/roots.hpp"

#include <cmath>
#include <limits>

#include "cmrp/errors.hpp"

namespace cmrp {

double brent(const std::function<double(double)>& f, double lo, double hi, double xtol,
             int max_iter) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);

  // Pull infinite bracket ends inward by bisection until both values are finite.
  for (int i = 0; i < 200 && !std::isfinite(fa); ++i) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (std::signbit(fm) == std::signbit(fb) && fm != 0.0) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  for (int i = 0; i < 200 && !std::isfinite(fb); ++i) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (std::signbit(fm) == std::signbit(fa) && fm != 0.0) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  if (!std::isfinite(fa) || !std::isfinite(fb)) {
    throw NoRoot("brent: could not reduce bracket to finite function values");
  }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw NoRoot("brent: endpoints do not bracket a sign change");
  }

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
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
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // Inverse quadratic / secant step.
      double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        double qq = fa / fc;
        double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
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
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

}  // namespace cmrp
