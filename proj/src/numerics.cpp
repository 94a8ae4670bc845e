#include "amplab/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace amplab {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;  // 1/sqrt(2*pi)
constexpr double kInvSqrt2 = 0.7071067811865475244008444;    // 1/sqrt(2)

void check_bracket(const Interval& b) {
  if (!(b.lo < b.hi) || !std::isfinite(b.lo) || !std::isfinite(b.hi)) {
    throw BracketFailure("invalid bracket");
  }
}
}  // namespace

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double find_root(const std::function<double(double)>& f, Interval bracket,
                 const Tolerance& tol) {
  check_bracket(bracket);
  double a = bracket.lo, b = bracket.hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw NoSignChange("find_root: no sign change over bracket");

  double x = 0.5 * (a + b);
  for (int it = 0; it < tol.max_iter; ++it) {
    // Secant proposal from the current bracket endpoints, bisection fallback.
    double s;
    if (fb != fa) {
      s = b - fb * (b - a) / (fb - fa);
    } else {
      s = 0.5 * (a + b);
    }
    const double width = b - a;
    if (!(s > a && s < b)) s = 0.5 * (a + b);
    // Keep a minimum step away from the endpoints so the bracket shrinks.
    const double guard = 0.01 * width;
    s = std::clamp(s, a + guard, b - guard);

    const double fs = f(s);
    x = s;
    if (fs == 0.0) return s;
    if (fa * fs < 0.0) {
      b = s;
      fb = fs;
    } else {
      a = s;
      fa = fs;
    }
    const double scale = std::max(std::abs(a), std::abs(b));
    if (b - a <= tol.abs_tol + tol.rel_tol * scale) {
      return std::abs(fa) < std::abs(fb) ? a : b;
    }
  }
  throw MaxIterExceeded("find_root: max iterations", x, b - a);
}

MinimizeResult minimize_unimodal(const std::function<double(double)>& f, Interval bracket,
                                 const Tolerance& tol) {
  check_bracket(bracket);
  const double golden = 0.3819660112501051;  // 2 - golden ratio

  double a = bracket.lo, b = bracket.hi;
  double x = a + golden * (b - a);
  double w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double fmin_seen = fx, fmax_seen = fx;

  double d = 0.0, e = 0.0;
  int it = 0;
  for (; it < tol.max_iter; ++it) {
    const double m = 0.5 * (a + b);
    const double tol1 = tol.rel_tol * std::abs(x) + tol.abs_tol;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) break;

    bool took_parabolic = false;
    if (std::abs(e) > tol1) {
      // Parabola through (v,fv), (w,fw), (x,fx).
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_old = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (m > x) ? tol1 : -tol1;
        took_parabolic = true;
      }
    }
    if (!took_parabolic) {
      e = (x < m) ? b - x : a - x;
      d = golden * e;
    }

    const double u = (std::abs(d) >= tol1) ? x + d : x + ((d > 0.0) ? tol1 : -tol1);
    const double fu = f(u);
    fmin_seen = std::min(fmin_seen, fu);
    fmax_seen = std::max(fmax_seen, fu);

    if (fu <= fx) {
      if (u < x) b = x; else a = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  if (it >= tol.max_iter) {
    throw MaxIterExceeded("minimize_unimodal: max iterations", x, b - a);
  }
  const bool degenerate = (fmax_seen - fmin_seen) <= 1e-15 * (1.0 + std::abs(fx));
  return MinimizeResult{x, fx, it, degenerate};
}

}  // namespace amplab
