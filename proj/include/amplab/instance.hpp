#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "amplab/prior.hpp"

namespace amplab {

/// Realized instance of LSF(delta, rho, sigma, nu): y = A x0 + z0 with
/// A ~ iid N(0, 1/n), x0 ~ iid nu, z0 ~ iid N(0, sigma^2), n = round(delta N).
struct ProblemInstance {
  Eigen::MatrixXd A;
  Eigen::VectorXd x0;
  Eigen::VectorXd z0;
  Eigen::VectorXd y;
  double delta;
  double rho;
  double sigma;
  int n;
  int N;
  int k;  // nominal sparsity budget round(rho * n)
};

/// Deterministic given the seed; trials keyed by distinct seeds are
/// statistically independent.
ProblemInstance generate_instance(double delta, double rho, double sigma,
                                  const DiscretePrior& prior, int N, std::uint64_t seed);

}  // namespace amplab
