#pragma once

#include <vector>

namespace amplab {

/// Finitely supported signed probability measure: the signal distribution.
/// Weights sum to 1, atoms are distinct; sign-constrained priors have all
/// atoms >= 0 and are denoised with the one-sided threshold.
struct DiscretePrior {
  std::vector<double> atoms;
  std::vector<double> weights;
  bool sign_constrained = false;

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;

  double second_moment() const;
  double mass_at_zero() const;
  /// Fraction of mass off the origin (the sparsity level epsilon).
  double epsilon() const { return 1.0 - mass_at_zero(); }

  /// Measure of a*X for X ~ this (atoms scaled by a > 0).
  DiscretePrior scaled(double a) const;

  static DiscretePrior point_mass_at_zero(bool sign_constrained = false);

  /// (1-eps) at 0 and eps split on the nonzero support: +/-mu for the signed
  /// case, a single atom at +mu when sign_constrained.
  static DiscretePrior three_point(double epsilon, double mu, bool sign_constrained = false);

  /// Convex combination (1-w)*a + w*b; coincident atoms are merged.
  static DiscretePrior mixture(const DiscretePrior& a, const DiscretePrior& b, double w);
};

}  // namespace amplab
