#include "pullfit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pullfit {

ScalarMinimum brent_minimize(const std::function<double(double)>& f, double lo,
                             double hi, double start, double tol,
                             std::size_t max_evaluations) {
  constexpr double golden = 0.3819660112501051;  // (3 - sqrt(5)) / 2
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());

  const double lo_bound = std::min(lo, hi);
  const double hi_bound = std::max(lo, hi);
  double a = lo_bound;
  double b = hi_bound;
  double x = std::clamp(start, a, b);
  double w = x;
  double v = x;
  double fx = f(x);
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;

  ScalarMinimum result;
  result.evaluations = 1;

  while (result.evaluations < max_evaluations) {
    const double xm = 0.5 * (a + b);
    const double tol1 = sqrt_eps * std::abs(x) + tol / 3.0;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) {
      result.converged = true;
      break;
    }

    bool golden_step = true;
    if (std::abs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) {
        p = -p;
      } else {
        q = -q;
      }
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) {
          d = std::copysign(tol1, xm - x);
        }
        golden_step = false;
      }
    }
    if (golden_step) {
      e = (x >= xm) ? a - x : b - x;
      d = golden * e;
    }

    const double u = std::clamp(
        std::abs(d) >= tol1 ? x + d : x + std::copysign(tol1, d), lo_bound, hi_bound);
    const double fu = f(u);
    ++result.evaluations;

    if (fu <= fx) {
      if (u >= x) {
        a = x;
      } else {
        b = x;
      }
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x) {
        a = u;
      } else {
        b = u;
      }
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }

  result.x = x;
  result.fx = fx;
  return result;
}

} // namespace pullfit
