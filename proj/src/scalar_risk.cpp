#include "amplab/scalar_risk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace amplab {

double soft_threshold(double x, double theta) {
  if (x > theta) return x - theta;
  if (x < -theta) return x + theta;
  return 0.0;
}

double soft_threshold_pos(double x, double theta) {
  return x > theta ? x - theta : 0.0;
}

// Split E[(eta(mu+Z;tau)-mu)^2] over {Z > tau-mu}, {|mu+Z| <= tau}, {Z < -tau-mu}.
// Tail pieces use E[Z^2; Z>a] = Phi(-a) + a phi(a), E[Z; Z>a] = phi(a).
double atom_mse(double mu, double tau) {
  const double pm = normal_cdf(mu - tau);   // P{Z > tau - mu}
  const double pp = normal_cdf(-mu - tau);  // P{Z < -tau - mu}
  const double fm = normal_pdf(tau - mu);
  const double fp = normal_pdf(tau + mu);
  return (1.0 + tau * tau) * (pm + pp) + mu * mu * (1.0 - pm - pp) -
         (tau + mu) * fm + (mu - tau) * fp;
}

double atom_mse_pos(double mu, double tau) {
  const double pm = normal_cdf(mu - tau);
  const double fm = normal_pdf(tau - mu);
  return (1.0 + tau * tau) * pm + mu * mu * (1.0 - pm) - (tau + mu) * fm;
}

double scalar_mse(const DiscretePrior& prior, double sigma2, double tau) {
  if (sigma2 < 0.0) throw std::invalid_argument("scalar_mse: negative noise variance");
  if (tau < 0.0) throw std::invalid_argument("scalar_mse: negative threshold");
  if (sigma2 == 0.0) return 0.0;
  const double sigma = std::sqrt(sigma2);
  double total = 0.0;
  for (std::size_t i = 0; i < prior.atoms.size(); ++i) {
    const double mu = prior.atoms[i] / sigma;
    const double r = prior.sign_constrained ? atom_mse_pos(mu, tau) : atom_mse(mu, tau);
    total += prior.weights[i] * r;
  }
  return sigma2 * total;
}

double scalar_mse_worst_case(double epsilon, double tau, bool nonneg) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("worst case: epsilon outside [0,1]");
  }
  if (tau < 0.0) throw std::invalid_argument("worst case: negative threshold");
  const double at_zero = nonneg ? atom_mse_pos(0.0, tau) : atom_mse(0.0, tau);
  return epsilon * (1.0 + tau * tau) + (1.0 - epsilon) * at_zero;
}

MinimaxScalarResult minimax_scalar(double epsilon, bool sign_constrained) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("minimax_scalar: epsilon outside (0,1)");
  }
  // tau(eps) ~ sqrt(2 log(1/eps)) as eps -> 0; bracket with headroom.
  const double hi = std::max(10.0, 2.0 * std::sqrt(2.0 * std::log(1.0 / epsilon)));
  const auto res = minimize_unimodal(
      [epsilon, sign_constrained](double tau) {
        return scalar_mse_worst_case(epsilon, tau, sign_constrained);
      },
      Interval{1e-4, hi}, Tolerance{1e-12, 1e-12, 400});
  return MinimaxScalarResult{epsilon, res.fx, res.x, sign_constrained};
}

double least_favorable_mu(double epsilon, double alpha, double tau, bool sign_constrained) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("least_favorable_mu: epsilon outside (0,1)");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("least_favorable_mu: alpha outside (0,1)");
  }
  if (!(tau > 0.0)) throw std::invalid_argument("least_favorable_mu: tau must be positive");

  const double at_zero = sign_constrained ? atom_mse_pos(0.0, tau) : atom_mse(0.0, tau);
  const double target = (1.0 - alpha) * scalar_mse_worst_case(epsilon, tau, sign_constrained);
  if (target < at_zero) {
    throw NoSolution("least_favorable_mu: target risk below the zero-amplitude risk");
  }
  const auto risk_at = [&](double mu) {
    const double r = sign_constrained ? atom_mse_pos(mu, tau) : atom_mse(mu, tau);
    return (1.0 - epsilon) * at_zero + epsilon * r - target;
  };

  double hi = 20.0 * (1.0 + tau);
  int doublings = 0;
  while (risk_at(hi) < 0.0) {
    hi *= 2.0;
    if (++doublings > 60) {
      throw BracketFailure("least_favorable_mu: could not bracket amplitude");
    }
  }
  if (risk_at(0.0) >= 0.0) return 0.0;
  return find_root(risk_at, Interval{0.0, hi}, Tolerance{1e-12, 1e-12, 400});
}

}  // namespace amplab
