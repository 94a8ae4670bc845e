#include <doctest.h>

#include <cmath>
#include <random>

#include "amplab/minimax.hpp"
#include "amplab/scalar_risk.hpp"
#include "support/mc_oracle.hpp"

using namespace amplab;
using amplab::testing::mc_scalar_mse;

TEST_CASE("soft threshold") {
  CHECK(soft_threshold(5.0, 2.0) == 3.0);
  CHECK(soft_threshold(-1.0, 2.0) == 0.0);
  CHECK(soft_threshold(-5.0, 2.0) == -3.0);
  CHECK(soft_threshold(2.0, 2.0) == 0.0);
  CHECK(soft_threshold_pos(5.0, 2.0) == 3.0);
  CHECK(soft_threshold_pos(-5.0, 2.0) == 0.0);
  CHECK(soft_threshold_pos(2.0, 2.0) == 0.0);
}

TEST_CASE("scalar_mse on the point mass at zero") {
  const auto nu0 = DiscretePrior::point_mass_at_zero();
  // tau = 0: identity estimator on pure noise
  CHECK(scalar_mse(nu0, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  // closed form 2(1+tau^2)Phi(-tau) - 2 tau phi(tau)
  for (double tau : {0.5, 1.0, 1.96, 3.0}) {
    const double expected =
        2.0 * (1.0 + tau * tau) * normal_cdf(-tau) - 2.0 * tau * normal_pdf(tau);
    CHECK(scalar_mse(nu0, 1.0, tau) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("scalar_mse three-point prior vs Monte Carlo oracle") {
  const auto mm = minimax_scalar(0.1);
  const auto prior = DiscretePrior::three_point(0.1, 5.0);
  const auto oracle = mc_scalar_mse(prior, 1.0, mm.minimax_tau, 1000000, 20260810);
  const double closed = scalar_mse(prior, 1.0, mm.minimax_tau);
  CHECK(std::abs(closed - oracle.mean) < 3.0 * oracle.se);
}

TEST_CASE("scalar_mse worst case") {
  for (double eps : {0.0, 0.3, 0.8, 1.0}) {
    CHECK(scalar_mse_worst_case(eps, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK(scalar_mse_worst_case(0.01, 1.96) ==
        doctest::Approx(0.0612574053469972).epsilon(1e-12));
  for (double tau : {0.5, 2.0}) {
    CHECK(scalar_mse_worst_case(1.0, tau) == doctest::Approx(1.0 + tau * tau).epsilon(1e-13));
  }
}

TEST_CASE("worst case is the large-amplitude limit of three-point risk") {
  const double eps = 0.05, tau = 1.3;
  const double wc = scalar_mse_worst_case(eps, tau);
  double prev = 0.0;
  for (double mu : {1.0, 3.0, 6.0, 8.0}) {
    const double m = scalar_mse(DiscretePrior::three_point(eps, mu), 1.0, tau);
    CHECK(m < wc);
    CHECK(m >= prev);  // monotone in amplitude
    prev = m;
  }
  CHECK(wc - prev < 1e-10);
}

TEST_CASE("minimax_scalar reproduces the printed scalar rows") {
  // rows live at eps = delta * frac * rho_MSE(delta)
  const auto r1 = minimax_scalar(0.10 * 0.50 * phase_boundary(0.10));
  CHECK(std::abs(r1.minimax_mse - 0.06) < 0.01);
  CHECK(std::abs(r1.minimax_tau - 1.96) < 0.01);
  const auto r2 = minimax_scalar(0.50 * 0.50 * phase_boundary(0.50));
  CHECK(std::abs(r2.minimax_mse - 0.32) < 0.01);
  CHECK(std::abs(r2.minimax_tau - 1.15) < 0.01);
  const auto r3 = minimax_scalar(0.50 * 0.95 * phase_boundary(0.50));
  CHECK(std::abs(r3.minimax_mse - 0.48) < 0.01);
  CHECK(std::abs(r3.minimax_tau - 0.90) < 0.01);
}

TEST_CASE("minimax_scalar is increasing and concave in epsilon") {
  std::vector<double> ms;
  for (double eps = 0.01; eps <= 0.501; eps += 0.01) {
    ms.push_back(minimax_scalar(eps).minimax_mse);
  }
  for (std::size_t i = 1; i < ms.size(); ++i) CHECK(ms[i] > ms[i - 1]);
  for (std::size_t i = 2; i < ms.size(); ++i) {
    CHECK(ms[i] - 2.0 * ms[i - 1] + ms[i - 2] <= 1e-9);
  }
}

TEST_CASE("minimax_scalar rejects degenerate epsilon") {
  CHECK_THROWS(minimax_scalar(0.0));
  CHECK_THROWS(minimax_scalar(1.0));
}

TEST_CASE("sign constraint can only help") {
  for (double eps = 0.02; eps < 0.5; eps += 0.06) {
    CHECK(minimax_scalar(eps, true).minimax_mse <= minimax_scalar(eps, false).minimax_mse);
  }
}

TEST_CASE("least_favorable_mu matches the printed column and its definition") {
  const double eps1 = 0.10 * 0.50 * phase_boundary(0.10);
  const double mu1 = least_favorable_mu(eps1, 0.02, minimax_scalar(eps1).minimax_tau);
  CHECK(std::abs(mu1 - 3.74) < 0.01);

  const double eps2 = 0.50 * 0.50 * phase_boundary(0.50);
  const double mu2 = least_favorable_mu(eps2, 0.02, minimax_scalar(eps2).minimax_tau);
  CHECK(std::abs(mu2 - 3.11) < 0.01);

  // defining equation to 1e-8
  for (double eps : {0.01, 0.1, 0.3}) {
    for (double alpha : {0.02, 0.2, 0.5}) {
      const double tau = minimax_scalar(eps).minimax_tau;
      const double mu = least_favorable_mu(eps, alpha, tau);
      const double risk = scalar_mse(DiscretePrior::three_point(eps, mu), 1.0, tau);
      const double target = (1.0 - alpha) * scalar_mse_worst_case(eps, tau);
      CHECK(std::abs(risk - target) < 1e-8);
    }
  }
}

TEST_CASE("least_favorable_mu signals unreachable targets") {
  CHECK_THROWS_AS(least_favorable_mu(0.5, 0.999, 2.0), NoSolution);
}

TEST_CASE("one-sided least favorable amplitude solves the one-sided equation") {
  const double eps = 0.05;
  const auto mm = minimax_scalar(eps, true);
  const double mu = least_favorable_mu(eps, 0.02, mm.minimax_tau, true);
  const double risk =
      scalar_mse(DiscretePrior::three_point(eps, mu, true), 1.0, mm.minimax_tau);
  const double target = (1.0 - 0.02) * scalar_mse_worst_case(eps, mm.minimax_tau, true);
  CHECK(std::abs(risk - target) < 1e-8);
}

TEST_CASE("scale invariance of scalar_mse") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int it = 0; it < 50; ++it) {
    const double eps = 0.02 + 0.5 * unif(rng);
    const double mu = 0.5 + 8.0 * unif(rng);
    const double sigma = 0.2 + 3.0 * unif(rng);
    const double tau = 0.2 + 2.5 * unif(rng);
    const auto prior = DiscretePrior::three_point(eps, mu);
    const double lhs = scalar_mse(prior, sigma * sigma, tau);
    const double rhs = sigma * sigma * scalar_mse(prior.scaled(1.0 / sigma), 1.0, tau);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("closed form matches Monte Carlo on random configurations") {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int it = 0; it < 6; ++it) {
    const bool nonneg = (it % 2 == 0);
    DiscretePrior prior;
    prior.sign_constrained = nonneg;
    const int n_atoms = 2 + static_cast<int>(unif(rng) * 2);
    double wsum = 0.0;
    for (int a = 0; a < n_atoms; ++a) {
      const double atom = (nonneg ? 1.0 : ((a % 2) ? -1.0 : 1.0)) * (0.3 + 6.0 * unif(rng)) +
                          a * 1e-3;
      const double w = 0.1 + unif(rng);
      prior.atoms.push_back(atom);
      prior.weights.push_back(w);
      wsum += w;
    }
    for (auto& w : prior.weights) w /= wsum;
    const double sigma2 = std::pow(0.4 + 2.0 * unif(rng), 2);
    const double tau = 0.3 + 2.5 * unif(rng);
    const double closed = scalar_mse(prior, sigma2, tau);
    const auto oracle = mc_scalar_mse(prior, sigma2, tau, 400000, 1000 + it);
    CHECK(std::abs(closed - oracle.mean) < 3.0 * oracle.se);
  }
}
