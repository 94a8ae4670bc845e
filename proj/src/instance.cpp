#include "amplab/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "amplab/rng.hpp"

namespace amplab {

ProblemInstance generate_instance(double delta, double rho, double sigma,
                                  const DiscretePrior& prior, int N, std::uint64_t seed) {
  prior.validate();
  if (N < 10) throw std::invalid_argument("generate_instance: N < 10");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("generate_instance: delta outside (0,1)");
  }
  if (!(rho > 0.0 && rho < 1.0)) {
    throw std::invalid_argument("generate_instance: rho outside (0,1)");
  }
  if (sigma < 0.0) throw std::invalid_argument("generate_instance: negative sigma");

  ProblemInstance inst;
  inst.delta = delta;
  inst.rho = rho;
  inst.sigma = sigma;
  inst.N = N;
  inst.n = static_cast<int>(std::lround(delta * N));
  if (inst.n < 1) throw std::invalid_argument("generate_instance: delta*N rounds to zero");
  inst.k = static_cast<int>(std::lround(rho * inst.n));

  std::mt19937_64 rng = trial_rng(seed, 0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Draw order is fixed (x0, A column-major, z0) so instances are
  // reproducible byte-for-byte for a given seed and build.
  //
  // The signal realizes nu at the fixed sparsity budget: round(eps N) support
  // positions (capped at round(rho n)) drawn uniformly, values iid from the
  // conditional law of nu off the origin. An unconditioned iid draw would
  // break the sparsity budget on about half the realizations, and near the
  // phase boundary the binomial excess pushes single instances above the
  // transition; fixing the count keeps the realized second moment centered
  // on mu_2(nu), which is what the state-evolution predictions describe.
  const double eps_prior = prior.epsilon();
  int k_draw = static_cast<int>(std::lround(eps_prior * N));
  k_draw = std::min(k_draw, inst.k);
  inst.x0 = Eigen::VectorXd::Zero(N);
  if (k_draw > 0) {
    std::vector<double> nz_atoms, nz_cumweight;
    double acc = 0.0;
    for (std::size_t a = 0; a < prior.atoms.size(); ++a) {
      if (prior.atoms[a] == 0.0) continue;
      acc += prior.weights[a] / eps_prior;
      nz_atoms.push_back(prior.atoms[a]);
      nz_cumweight.push_back(acc);
    }
    // partial Fisher-Yates for the support set
    std::vector<int> idx(N);
    for (int j = 0; j < N; ++j) idx[j] = j;
    for (int i = 0; i < k_draw; ++i) {
      std::uniform_int_distribution<int> pick(i, N - 1);
      std::swap(idx[i], idx[pick(rng)]);
      const double u = unif(rng);
      double value = nz_atoms.back();
      for (std::size_t a = 0; a < nz_atoms.size(); ++a) {
        if (u <= nz_cumweight[a]) {
          value = nz_atoms[a];
          break;
        }
      }
      inst.x0[idx[i]] = value;
    }
  }

  const double col_sd = 1.0 / std::sqrt(static_cast<double>(inst.n));
  inst.A.resize(inst.n, N);
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < inst.n; ++i) inst.A(i, j) = col_sd * gauss(rng);
  }

  inst.z0.resize(inst.n);
  for (int i = 0; i < inst.n; ++i) inst.z0[i] = sigma * gauss(rng);

  inst.y = inst.A * inst.x0 + inst.z0;
  return inst;
}

}  // namespace amplab
