#pragma once

#include "amplab/numerics.hpp"
#include "amplab/prior.hpp"

namespace amplab {

/// eta(x; theta): shrink towards 0 by theta, exact zero on [-theta, theta].
double soft_threshold(double x, double theta);

/// One-sided variant: (x - theta)_+.
double soft_threshold_pos(double x, double theta);

/// E[(eta(mu + Z; tau) - mu)^2], Z ~ N(0,1). Closed form in phi/Phi.
double atom_mse(double mu, double tau);

/// Same for the positivity-constrained threshold eta+.
double atom_mse_pos(double mu, double tau);

/// Soft-threshold risk E[(eta(X + sigma Z; tau sigma) - X)^2], X ~ prior.
/// Uses eta+ when the prior is sign-constrained. sigma2 = 0 returns the
/// exact limit 0.
double scalar_mse(const DiscretePrior& prior, double sigma2, double tau);

/// sup over F_eps of the unit-noise risk at threshold tau:
///   eps (1 + tau^2) + (1 - eps) E[eta(Z; tau)^2]
/// (one-sided analogue when nonneg, the sup over F+_eps with its atom at +inf).
double scalar_mse_worst_case(double epsilon, double tau, bool nonneg = false);

struct MinimaxScalarResult {
  double epsilon;
  double minimax_mse;  // M(eps)
  double minimax_tau;  // tau(eps)
  bool sign_constrained;
};

/// Minimax threshold risk over F_eps (or F+_eps): minimizes the worst case
/// over tau. Valid for eps in the open interval (0,1).
MinimaxScalarResult minimax_scalar(double epsilon, bool sign_constrained = false);

/// Smallest amplitude mu whose three-point mixture attains (1 - alpha) of the
/// worst-case risk at threshold tau. Monotone root finding in mu.
double least_favorable_mu(double epsilon, double alpha, double tau,
                          bool sign_constrained = false);

}  // namespace amplab
