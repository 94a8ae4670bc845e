#pragma once

#include <vector>

#include "amplab/numerics.hpp"
#include "amplab/prior.hpp"

namespace amplab {

/// Fixed parameters of the state (m; delta, sigma, tau, nu).
struct SEParams {
  double delta;
  double sigma;
  double tau;
  DiscretePrior prior;

  void validate() const;
  double npi(double m) const { return sigma * sigma + m / delta; }
};

struct SEFixedPoint {
  double m_star;            // HFP(Psi)
  double stability;         // dPsi/dm at m_star
  int iterations;
  std::vector<double> trajectory;  // m_0, m_1, ... from the fixed-point iteration
  double residual;          // |Psi(m_star) - m_star|
};

/// All equilibrium operating characteristics of AMPT(tau).
struct EquilibriumReport {
  double eq_mse;   // m_infinity
  double npi;      // sigma^2 + m/delta
  double theta;    // tau * sqrt(npi)
  double eq_msr;   // E[(Y - eta(Y; theta))^2]
  double eq_mae;   // E|eta(Y; theta)|
  double eq_dr;    // P{eta(Y; theta) != 0}
  double eq_pmsr;  // EqMSR/2 + theta (1 - EqDR/delta) EqMAE
};

enum class ObservableKind { MSE, FAR, DR, MDR, FDeR, FDR };

inline Tolerance se_default_tolerance() { return Tolerance{1e-10, 1e-10, 100000}; }

/// The MSE map Psi(m) = mse(sigma^2 + m/delta; nu, tau). Concave and
/// nondecreasing in m.
double mse_map(double m, const SEParams& params);

/// Iterates m <- Psi(m) from m_0 = mu_2(nu); the trajectory is monotone and
/// converges to the highest fixed point. Falls back to bisection on
/// Psi(m) - m when the contraction is too close to 1 (near phase transition).
/// Throws MaxIterExceeded with the last iterate when the evolution diverges.
SEFixedPoint find_hfp(const SEParams& params, const Tolerance& tol = se_default_tolerance());

/// Closed-form Gaussian expectations in the equilibrium state Y = X + sqrt(npi) Z.
EquilibriumReport equilibrium_report(const SEParams& params, const SEFixedPoint& fp);

/// Formal large-system limit of the observable generated by zeta(u, v, w) in
/// the equilibrium state. Throws std::domain_error where the defining ratio is
/// degenerate (MDR/FDeR at eps = 0, FDR at DR = 0, FAR at eps = 1).
double formal_observable(ObservableKind kind, const SEParams& params, const SEFixedPoint& fp);

// Per-atom equilibrium expectations at unit noise scale (atom at mu, threshold
// tau). Exposed for reuse by the minimax calibration and for oracle tests.
double atom_detect(double mu, double tau, bool nonneg);
double atom_mae(double mu, double tau, bool nonneg);
double atom_msr(double mu, double tau, bool nonneg);

}  // namespace amplab
