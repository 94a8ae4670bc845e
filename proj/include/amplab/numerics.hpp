#pragma once

#include <functional>

#include "amplab/errors.hpp"

namespace amplab {

/// Closed bracket [lo, hi], lo < hi, both finite.
struct Interval {
  double lo;
  double hi;
};

struct Tolerance {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_iter = 200;
};

/// Standard normal density exp(-z^2/2)/sqrt(2*pi).
double normal_pdf(double z);

/// Standard normal distribution function. Relative error below 1e-12 for |z| <= 8
/// (erfc-based, so the left tail keeps full relative accuracy).
double normal_cdf(double z);

/// Bracketed root of a function with f(lo)*f(hi) <= 0. Secant steps with a
/// bisection safeguard; the bracket never widens.
double find_root(const std::function<double(double)>& f, Interval bracket,
                 const Tolerance& tol = Tolerance{});

struct MinimizeResult {
  double x;
  double fx;
  int iterations;
  bool degenerate;  // objective flat over the whole bracket
};

/// Minimum of a unimodal function on a bracket: golden section with parabolic
/// acceleration (Brent).
MinimizeResult minimize_unimodal(const std::function<double(double)>& f, Interval bracket,
                                 const Tolerance& tol = Tolerance{});

}  // namespace amplab
