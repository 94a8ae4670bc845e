#pragma once

#include "amplab/prior.hpp"
#include "amplab/state_evolution.hpp"

namespace amplab {

struct PhasePoint {
  double delta;
  double rho;
  bool sign_constrained = false;

  void validate() const;
  double epsilon() const { return delta * rho; }
};

/// Per-point minimax quantities at sigma = 1. Above the phase boundary the
/// diverging fields carry IEEE +infinity and below_pt is false.
struct PhasePointReport {
  double epsilon;
  bool below_pt;
  double m_star_sensitivity;  // M*
  double tau_star;            // tau(eps), defined on both sides
  double npi_star;            // 1 + M*/delta
  double mu_star;             // mu(eps, alpha) * sqrt(NPI*)
  double lambda_star;         // maximin penalty at the near-LF prior
  double alpha;               // alpha used for mu_star/lambda_star
};

struct AbovePTConstruction {
  double gamma;
  double tau;
  double mu;           // amplitude of the constructed three-point prior
  double lambda;       // calibrated LASSO penalty
  double fmse;         // delta gamma / (1 - gamma)
  double fnpi;         // 1 / (1 - gamma)
  double alpha_star;   // 1 - gamma delta / M(eps, tau)
  double mu_unit;      // amplitude before the equilibrium rescale
  double eq_dr;        // equilibrium detection rate of the construction
};

/// rho solving M(rho * delta) = delta; monotone root finding in rho.
double phase_boundary(double delta, bool sign_constrained = false);

struct BoundaryPoint {
  double delta;
  double rho;
};

/// Closed-form parametric point of the (two-sided) phase boundary:
///   delta = 2 phi(tau) / (tau + 2(phi(tau) - tau Phi(-tau))),
///   rho   = 1 - tau Phi(-tau) / phi(tau).
/// The parameter tau is the minimax threshold at the returned point.
BoundaryPoint phase_boundary_parametric(double tau);

/// M* = M(eps)/(1 - M(eps)/delta) below the boundary, +infinity above, plus
/// the saddlepoint strategy (tau*, mu*(alpha), lambda*).
PhasePointReport noise_sensitivity(const PhasePoint& point, double alpha = 0.02);

/// Maximin penalty lambda* = theta_inf (1 - EqDR/delta) at the equilibrium of
/// the near-least-favorable prior; scales linearly in sigma. Throws AbovePT.
double maximin_lambda(const PhasePoint& point, double alpha, double sigma);

/// The AMPT(tau) <-> LASSO(lambda) calibration lambda = theta_inf (1 - EqDR/delta)
/// evaluated at the equilibrium for tau. Throws OversaturatedModel if EqDR >= delta.
double calibrate_tau_to_lambda(double tau, const SEParams& params);

/// Inverse of the calibration map: the unique tau on [tau_0, inf) with
/// lambda(tau) equal to the given value.
double calibrate_lambda_to_tau(double lambda, const SEParams& params);

/// Three-point construction with arbitrarily large formal MSE above the phase
/// boundary. Requires mse(0,tau) < gamma*delta and gamma*delta < M(eps,tau).
AbovePTConstruction above_pt_construction(const PhasePoint& point, double gamma, double tau);

/// Upper bound on the formal MSE of the mixture (1-w) nu0 + w nu1 when
/// mse(nu0, tau) >= mse(nu1, tau): both components rescaled at the mixture
/// equilibrium, weighted by NPI(nu0).
double quasi_affinity_bound(const DiscretePrior& nu0, const DiscretePrior& nu1, double w,
                            double delta, double sigma, double tau);

}  // namespace amplab
