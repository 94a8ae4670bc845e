#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "amplab/instance.hpp"
#include "amplab/numerics.hpp"

namespace amplab {

struct LassoSolution {
  Eigen::VectorXd xhat;
  double lambda;
  double objective;     // 0.5 ||y - A xhat||^2 + lambda ||xhat||_1
  double duality_gap;
  int iterations;       // coordinate sweeps
  int support_size;
};

inline Tolerance lasso_default_tolerance() { return Tolerance{1e-9, 0.0, 100000}; }

/// Cyclic coordinate descent with active-set sweeps; stops when the duality
/// gap from the scaled-residual dual point drops below
/// tol.abs_tol * (1 + |objective|). On sweep exhaustion returns the best
/// iterate with its achieved gap. lambda = 0 is solved at the basis-pursuit
/// proxy 1e-6 * ||A^T y||_inf.
LassoSolution solve_lasso(const ProblemInstance& instance, double lambda, bool nonneg = false,
                          const Tolerance& tol = lasso_default_tolerance(),
                          const Eigen::VectorXd* warm_start = nullptr);

/// Per-lambda empirical MSE against x0, warm-started along the path in
/// decreasing lambda. Results come back in the input order.
std::vector<std::pair<double, double>> lasso_path_mse(const ProblemInstance& instance,
                                                      const std::vector<double>& lambdas,
                                                      bool nonneg = false,
                                                      const Tolerance& tol = lasso_default_tolerance());

}  // namespace amplab
