#pragma once

#include <Eigen/Dense>
#include <functional>

#include "amplab/instance.hpp"
#include "amplab/numerics.hpp"

namespace amplab {

/// Empirical residual-scale estimator for the threshold rule theta_t = tau * sigma_t.
enum class ResidualScale { RMS, MAD };

struct AMPState {
  Eigen::VectorXd estimate;  // xhat_t
  Eigen::VectorXd residual;  // working residual z_t
  int df;                    // ||xhat_t||_0
  double sigma_t;            // residual scale
  double theta_t;            // tau * sigma_t
  int iteration;
};

struct AMPResult {
  AMPState state;
  bool converged;
};

inline Tolerance amp_default_tolerance() { return Tolerance{0.0, 1e-8, 2000}; }

/// AMPT(tau): soft thresholding of A^T z + xhat with the Onsager-corrected
/// working residual z^t = y - A xhat^t + z^{t-1} df_t/n. Starts from xhat = 0,
/// z^{-1} = 0 (so z^0 = y). Stops when the relative change of xhat drops
/// below tol.rel_tol. Throws Diverged if the estimate escapes a guard bound.
/// on_iteration, when set, observes the state after every update.
AMPResult amp_iterate(const ProblemInstance& instance, double tau,
                      const Tolerance& tol = amp_default_tolerance(),
                      ResidualScale scale = ResidualScale::RMS, bool nonneg = false,
                      const std::function<void(const AMPState&)>& on_iteration = {});

struct KKTReport {
  bool pass;
  double worst_gradient;  // excess of ||A^T r||_inf over lambda
  double worst_sign;      // worst per-coordinate stationarity violation on the support
};

/// LASSO optimality certificate: ||A^T(y - A xhat)||_inf <= lambda + kkt_tol
/// and the per-coordinate sign conditions on the support.
KKTReport verify_lasso_kkt(const ProblemInstance& instance, const Eigen::VectorXd& xhat,
                           double lambda, double kkt_tol, bool nonneg = false);

}  // namespace amplab
