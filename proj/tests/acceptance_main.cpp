// Acceptance suite: one pass/fail line per criterion. Criteria 1-5 are
// deterministic analytics, 6-7 oracle-equivalence checks, 8-11 desk-scale
// Monte Carlo reproductions. Select subsets with --criteria "1-5,7".
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "amplab/amp.hpp"
#include "amplab/harness.hpp"
#include "amplab/instance.hpp"
#include "amplab/lasso.hpp"
#include "amplab/minimax.hpp"
#include "amplab/scalar_risk.hpp"
#include "amplab/state_evolution.hpp"
#include "../tests/support/mc_oracle.hpp"

using namespace amplab;

namespace {

struct Failure {
  std::string detail;
};

struct Check {
  bool ok = true;
  std::vector<std::string> failures;
  void expect(bool cond, const std::string& detail) {
    if (!cond) {
      ok = false;
      failures.push_back(detail);
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Quasi-least-favorable reference rows: delta, fraction of rho_MSE, and the
// printed two-decimal columns eps, M, tau, mu (scalar) / Mstar, mustar,
// taustar, lambdastar (phase point).
struct Table2Row {
  double delta, frac;
  double eps, m_pm, tau_pm, mu_pm;
  double m_star, mu_star, tau_star, lambda_star;
};

const std::vector<Table2Row> kTable2 = {
    {0.10, 0.50, 0.01, 0.06, 1.96, 3.74, 0.14, 5.79, 1.96, 1.28},
    {0.10, 0.75, 0.01, 0.08, 1.83, 3.63, 0.41, 8.24, 1.83, 0.83},
    {0.10, 0.90, 0.02, 0.09, 1.77, 3.58, 1.20, 12.90, 1.77, 0.51},
    {0.10, 0.95, 0.02, 0.10, 1.75, 3.57, 2.53, 18.28, 1.75, 0.41},
    {0.25, 0.50, 0.03, 0.15, 1.54, 3.41, 0.39, 5.46, 1.54, 0.98},
    {0.25, 0.75, 0.05, 0.20, 1.40, 3.29, 1.12, 7.68, 1.40, 0.62},
    {0.25, 0.90, 0.06, 0.23, 1.33, 3.24, 3.28, 12.22, 1.33, 0.39},
    {0.25, 0.95, 0.06, 0.24, 1.31, 3.23, 6.89, 17.31, 1.31, 0.30},
    {0.50, 0.50, 0.10, 0.32, 1.15, 3.11, 0.90, 5.19, 1.15, 0.70},
    {0.50, 0.75, 0.14, 0.42, 1.00, 2.99, 2.55, 7.35, 1.00, 0.42},
    {0.50, 0.90, 0.17, 0.47, 0.92, 2.93, 7.51, 11.75, 0.92, 0.26},
    {0.50, 0.95, 0.18, 0.48, 0.90, 2.91, 15.75, 16.67, 0.90, 0.20},
};

// Above-PT reference block at (0.25, 0.401): gamma, tau -> printed mu, lambda.
struct Table6Row {
  double gamma, tau, mu, lambda;
};

const std::vector<Table6Row> kTable6 = {
    {0.750, 1.5, 2.8740, 0.9840},  {0.850, 1.5, 4.1420, 1.1680},
    {0.900, 1.5, 5.3450, 1.3660},  {0.950, 1.5, 7.9540, 1.8410},
    {0.970, 1.5, 10.4781, 2.3280}, {0.980, 1.5, 12.9628, 2.8220},
    {0.990, 1.5, 18.5172, 3.9490}, {0.995, 1.5, 26.3191, 5.5558},
    {0.750, 2.0, 2.9031, 2.8766},  {0.850, 2.0, 4.0580, 3.6260},
    {0.900, 2.0, 5.1580, 4.3850},  {0.950, 2.0, 7.5600, 6.1220},
    {0.970, 2.0, 9.8970, 7.8610},  {0.980, 2.0, 12.2050, 9.6019},
    {0.990, 2.0, 17.3800, 13.5425},{0.995, 2.0, 24.6620, 19.1260},
    {0.750, 2.5, 2.8170, 4.5010},  {0.850, 2.5, 3.8960, 5.7500},
    {0.900, 2.5, 4.9260, 7.0040},  {0.950, 2.5, 7.1810, 9.8480},
    {0.970, 2.5, 9.3800, 12.6846}, {0.980, 2.5, 11.5550, 15.5170},
    {0.990, 2.5, 16.4360, 21.9183},{0.995, 2.5, 23.3110, 30.9786},
    {0.750, 3.0, 2.7649, 5.8144},  {0.850, 3.0, 3.8090, 7.4730},
    {0.900, 3.0, 4.8060, 9.1310},  {0.950, 3.0, 6.9910, 12.8800},
    {0.970, 3.0, 9.1250, 16.6113}, {0.980, 3.0, 11.2360, 20.3339},
    {0.990, 3.0, 15.9750, 28.7413},{0.995, 3.0, 22.6520, 40.6356},
};

// --- criterion 1: scalar minimax columns ---
Check criterion1() {
  Check c;
  for (const auto& row : kTable2) {
    const double rho = row.frac * phase_boundary(row.delta);
    const double eps = row.delta * rho;
    const auto mm = minimax_scalar(eps);
    const double mu = least_favorable_mu(eps, 0.02, mm.minimax_tau);
    const std::string where =
        "(delta=" + fmt(row.delta) + ", frac=" + fmt(row.frac) + ") ";
    c.expect(std::abs(eps - row.eps) <= 0.01 + 1e-12,
             where + "eps " + fmt(eps) + " vs " + fmt(row.eps));
    c.expect(std::abs(mm.minimax_mse - row.m_pm) <= 0.01 + 1e-12,
             where + "M " + fmt(mm.minimax_mse) + " vs " + fmt(row.m_pm));
    c.expect(std::abs(mm.minimax_tau - row.tau_pm) <= 0.01 + 1e-12,
             where + "tau " + fmt(mm.minimax_tau) + " vs " + fmt(row.tau_pm));
    c.expect(std::abs(mu - row.mu_pm) <= 0.01 + 1e-12,
             where + "mu " + fmt(mu) + " vs " + fmt(row.mu_pm));
  }
  return c;
}

// --- criterion 2: phase-point minimax columns ---
Check criterion2() {
  Check c;
  const auto tol = [](double printed) { return std::max(0.01, 0.01 * std::abs(printed)) + 1e-12; };
  for (const auto& row : kTable2) {
    const double rho = row.frac * phase_boundary(row.delta);
    const auto rep = noise_sensitivity({row.delta, rho}, 0.02);
    const std::string where =
        "(delta=" + fmt(row.delta) + ", frac=" + fmt(row.frac) + ") ";
    c.expect(rep.below_pt, where + "expected below PT");
    c.expect(std::abs(rep.m_star_sensitivity - row.m_star) <= tol(row.m_star),
             where + "M* " + fmt(rep.m_star_sensitivity) + " vs " + fmt(row.m_star));
    c.expect(std::abs(rep.mu_star - row.mu_star) <= tol(row.mu_star),
             where + "mu* " + fmt(rep.mu_star) + " vs " + fmt(row.mu_star));
    c.expect(std::abs(rep.tau_star - row.tau_star) <= tol(row.tau_star),
             where + "tau* " + fmt(rep.tau_star) + " vs " + fmt(row.tau_star));
    c.expect(std::abs(rep.lambda_star - row.lambda_star) <= tol(row.lambda_star),
             where + "lambda* " + fmt(rep.lambda_star) + " vs " + fmt(row.lambda_star));
  }
  return c;
}

// --- criterion 3: boundary consistency ---
Check criterion3() {
  Check c;
  for (int i = 0; i < 200; ++i) {
    const double tau = 0.05 + i * (6.0 - 0.05) / 199.0;
    const auto bp = phase_boundary_parametric(tau);
    const double rho_root = phase_boundary(bp.delta);
    c.expect(std::abs(rho_root - bp.rho) <= 1e-6,
             "tau=" + fmt(tau) + " parametric/root mismatch " + fmt(rho_root - bp.rho));
    const double gap = minimax_scalar(bp.delta * bp.rho).minimax_mse - bp.delta;
    c.expect(std::abs(gap) <= 1e-8, "tau=" + fmt(tau) + " M(rho delta)-delta " + fmt(gap));
  }
  const double r25 = phase_boundary(0.25), r10 = phase_boundary(0.10);
  c.expect(std::abs(r25 - 0.268) <= 0.002, "rho_MSE(0.25) " + fmt(r25));
  c.expect(std::abs(r10 - 0.190) <= 0.002, "rho_MSE(0.10) " + fmt(r10));
  return c;
}

// --- criterion 4: above-PT construction table ---
Check criterion4() {
  Check c;
  const PhasePoint point{0.25, 0.401};
  for (const auto& row : kTable6) {
    const auto con = above_pt_construction(point, row.gamma, row.tau);
    const std::string where = "(gamma=" + fmt(row.gamma) + ", tau=" + fmt(row.tau) + ") ";
    c.expect(std::abs(con.mu - row.mu) <= 0.01 + 1e-12,
             where + "mu " + fmt(con.mu) + " vs " + fmt(row.mu));
    c.expect(std::abs(con.lambda - row.lambda) <= 0.01 + 1e-12,
             where + "lambda " + fmt(con.lambda) + " vs " + fmt(row.lambda));
    const double exact = point.delta * row.gamma / (1.0 - row.gamma);
    c.expect(std::abs(con.fmse - exact) <= 1e-12 * std::max(1.0, exact),
             where + "fMSE " + fmt(con.fmse) + " vs exact " + fmt(exact));
  }
  return c;
}

// --- criterion 5: randomized property suites ---
Check criterion5() {
  Check c;
  std::mt19937_64 rng(50505);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // scale invariance of the scalar risk
  for (int it = 0; it < 100; ++it) {
    const double eps = 0.02 + 0.6 * unif(rng);
    const double mu = 0.3 + 8.0 * unif(rng);
    const double sigma = 0.2 + 3.0 * unif(rng);
    const double tau = 0.2 + 2.5 * unif(rng);
    const auto prior = DiscretePrior::three_point(eps, mu);
    const double lhs = scalar_mse(prior, sigma * sigma, tau);
    const double rhs = sigma * sigma * scalar_mse(prior.scaled(1.0 / sigma), 1.0, tau);
    c.expect(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)),
             "scale invariance config " + std::to_string(it));
  }

  // Psi concavity + shift identity
  for (int it = 0; it < 100; ++it) {
    const double delta = 0.1 + 0.8 * unif(rng);
    const double eps = std::min(0.9, delta * (0.05 + 0.5 * unif(rng)));
    const SEParams p{delta, 0.3 + 1.5 * unif(rng), 0.4 + 2.0 * unif(rng),
                     DiscretePrior::three_point(eps, 0.5 + 6.0 * unif(rng))};
    double m1 = 4.0 * unif(rng), m3 = 4.0 * unif(rng);
    if (m1 > m3) std::swap(m1, m3);
    if (m3 - m1 < 1e-3) m3 += 0.1;
    const double m2 = 0.5 * (m1 + m3);
    const double f1 = mse_map(m1, p), f2 = mse_map(m2, p), f3 = mse_map(m3, p);
    c.expect(f1 + f3 - 2.0 * f2 <= 1e-9, "concavity config " + std::to_string(it));
    c.expect(f1 <= f2 + 1e-12 && f2 <= f3 + 1e-12,
             "monotonicity config " + std::to_string(it));
    SEParams p0 = p;
    p0.sigma = 0.0;
    const double lhs = mse_map(m1, p);
    const double rhs = mse_map(m1 + p.sigma * p.sigma * p.delta, p0);
    c.expect(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, lhs),
             "shift identity config " + std::to_string(it));
  }

  // quasi-affinity mixture bound
  for (int it = 0; it < 100; ++it) {
    const double delta = 0.15 + 0.6 * unif(rng);
    const double rho = (0.3 + 0.5 * unif(rng)) * phase_boundary(delta);
    const double eps = delta * rho;
    // the discount must keep (1-alpha) of the worst case above the
    // zero-amplitude risk, or no least-favorable amplitude exists
    const auto mm = minimax_scalar(eps);
    const double alpha_max =
        1.0 - atom_mse(0.0, mm.minimax_tau) / scalar_mse_worst_case(eps, mm.minimax_tau);
    const double alpha_soft = std::min(0.3 + 0.5 * unif(rng), 0.8 * alpha_max);
    const auto ns_hard = noise_sensitivity({delta, rho}, 0.02);
    const auto ns_soft = noise_sensitivity({delta, rho}, alpha_soft);
    const auto nu0 = DiscretePrior::three_point(eps, ns_hard.mu_star);
    const auto nu1 = DiscretePrior::three_point(eps, ns_soft.mu_star);
    const double w = unif(rng);
    const double tau = ns_hard.tau_star;
    const auto mix = DiscretePrior::mixture(nu0, nu1, w);
    const double fmse = find_hfp(SEParams{delta, 1.0, tau, mix}).m_star;
    const double bound = quasi_affinity_bound(nu0, nu1, w, delta, 1.0, tau);
    c.expect(fmse <= bound + 1e-9,
             "mixture bound config " + std::to_string(it) + ": fmse=" + fmt(fmse) +
                 " bound=" + fmt(bound));
  }
  return c;
}

// --- criterion 6: scalar risk vs Monte Carlo oracle ---
Check criterion6() {
  Check c;
  std::mt19937_64 rng(606060);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int it = 0; it < 50; ++it) {
    const bool nonneg = unif(rng) < 0.3;
    DiscretePrior prior;
    prior.sign_constrained = nonneg;
    const int n_atoms = 1 + static_cast<int>(unif(rng) * 3);
    double wsum = 0.0;
    for (int a = 0; a < n_atoms; ++a) {
      double atom = (0.2 + 7.0 * unif(rng)) + a * 1e-3;
      if (!nonneg && unif(rng) < 0.5) atom = -atom;
      prior.atoms.push_back(atom);
      prior.weights.push_back(0.05 + unif(rng));
      wsum += prior.weights.back();
    }
    // leave room for an atom at zero half the time
    if (unif(rng) < 0.5) {
      prior.atoms.push_back(0.0);
      prior.weights.push_back(2.0 * wsum);
      wsum *= 3.0;
    }
    for (auto& w : prior.weights) w /= wsum;
    prior.validate();
    const double sigma2 = std::pow(0.3 + 2.5 * unif(rng), 2);
    const double tau = 0.3 + 2.7 * unif(rng);
    const double closed = scalar_mse(prior, sigma2, tau);
    const auto oracle = amplab::testing::mc_scalar_mse(prior, sigma2, tau, 1000000,
                                                       900000 + it);
    c.expect(std::abs(closed - oracle.mean) <= 3.0 * oracle.se,
             "config " + std::to_string(it) + ": closed=" + fmt(closed) + " mc=" +
                 fmt(oracle.mean) + " se=" + fmt(oracle.se));
  }
  return c;
}

// --- criterion 7: AMPT fixed points certify as LASSO optima ---
Check criterion7() {
  Check c;
  // N=500 keeps n = delta*N large enough for the iteration to settle; the
  // finite-n 2-cycles below n ~ 100 are outside the correspondence regime.
  const double deltas[4] = {0.25, 0.35, 0.50, 0.65};
  const double fracs[2] = {0.4, 0.7};
  int run = 0;
  for (double delta : deltas) {
    for (double frac : fracs) {
      const double rho = frac * phase_boundary(delta);
      const auto ns = noise_sensitivity({delta, rho}, 0.02);
      const auto prior = DiscretePrior::three_point(delta * rho, ns.mu_star);
      for (int s = 0; s < (run % 2 == 0 ? 3 : 2); ++s) {
        const auto inst = generate_instance(delta, rho, 1.0, prior, 500, 7700 + 10 * run + s);
        const auto amp = amp_iterate(inst, ns.tau_star);
        const std::string where = "(delta=" + fmt(delta) + ", frac=" + fmt(frac) +
                                  ", seed=" + std::to_string(7700 + 10 * run + s) + ") ";
        c.expect(amp.converged, where + "AMPT did not converge");
        const double lambda =
            amp.state.theta_t * (1.0 - static_cast<double>(amp.state.df) / inst.n);
        const auto kkt = verify_lasso_kkt(inst, amp.state.estimate, lambda, 1e-4 * lambda);
        c.expect(kkt.pass, where + "KKT violation grad=" + fmt(kkt.worst_gradient) +
                               " sign=" + fmt(kkt.worst_sign));
        const auto sol = solve_lasso(inst, lambda);
        const double rel = (sol.xhat - amp.state.estimate).norm() /
                           std::max(sol.xhat.norm(), 1e-12);
        c.expect(rel <= 1e-3, where + "AMPT/CD relative gap " + fmt(rel));
      }
      ++run;
    }
  }
  return c;
}

ExperimentConfig desk_config(double delta, double frac, int N, int R, std::uint64_t seed) {
  ExperimentConfig c;
  c.delta = delta;
  c.rho_fraction = frac;
  c.rho = -1.0;
  c.sigma = 1.0;
  c.alpha = 0.02;
  c.N = N;
  c.replications = R;
  c.seed = seed;
  c.solver = SolverKind::Lasso;
  c.lambda_policy.kind = LambdaPolicy::Kind::Maximin;
  c.prior_spec.kind = PriorSpec::Kind::ThreePoint;
  c.prior_spec.alpha = 0.02;
  return c;
}

// --- criterion 8: near-LF table reproduction at desk scale ---
Check criterion8() {
  Check c;
  int violations = 0;
  std::vector<std::string> rows_out;
  for (double delta : {0.25, 0.50}) {
    for (double frac : {0.5, 0.75, 0.9, 0.95}) {
      const auto cfg = desk_config(delta, frac, 1000, 50,
                                   81000 + static_cast<int>(1000 * delta + 100 * frac));
      const auto rep = run_experiment(cfg);
      const bool ok = std::isfinite(rep.z_score) && std::abs(rep.z_score) < 3.0;
      if (!ok) ++violations;
      rows_out.push_back("(delta=" + fmt(delta) + ", frac=" + fmt(frac) + ") eMSE=" +
                         fmt(rep.mean_emse) + " fMSE=" + fmt(rep.fmse_prediction) + " SE=" +
                         fmt(rep.standard_error) + " z=" + fmt(rep.z_score) +
                         (ok ? "" : "  <-- |z| >= 3"));
    }
  }
  for (const auto& r : rows_out) std::cout << "        " << r << "\n";
  c.expect(violations <= 1, "rows with |z| >= 3: " + std::to_string(violations) +
                                " (finite-N allowance is 1 of 8)");
  return c;
}

// --- criterion 9: empirical saddlepoint scans ---
Check criterion9() {
  Check c;
  // lambda scan at (0.25, rho_MSE/2) on the printed penalty grid
  {
    const double delta = 0.25;
    const double rho = 0.5 * phase_boundary(delta);
    auto cfg = desk_config(delta, 0.5, 1000, 50, 91001);
    cfg.rho = rho;
    cfg.rho_fraction = -1.0;
    const std::vector<double> lambdas{0.518, 0.961, 1.419, 2.165, 3.555};
    const auto rows = saddle_scan({delta, rho}, SaddleMode::VaryLambda, cfg, lambdas);
    std::size_t argmin = 0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
      if (rows[k].emse < rows[argmin].emse) argmin = k;
    }
    for (const auto& r : rows) {
      std::cout << "        lambda=" << fmt(r.control) << " fMSE=" << fmt(r.fmse)
                << " eMSE=" << fmt(r.emse) << " SE=" << fmt(r.se) << "\n";
    }
    // lambda* = 0.961 sits at index 1; within one grid step
    c.expect(argmin <= 2, "lambda-scan argmin at index " + std::to_string(argmin) +
                              " (lambda=" + fmt(rows[argmin].control) + ")");
  }
  // mu scan at (0.50, rho_MSE/2): nonincreasing below mu* within 2 SE
  {
    const double delta = 0.50;
    const double rho = 0.5 * phase_boundary(delta);
    auto cfg = desk_config(delta, 0.5, 1000, 50, 91002);
    cfg.rho = rho;
    cfg.rho_fraction = -1.0;
    const auto ns = noise_sensitivity({delta, rho}, 0.02);
    std::vector<double> mus;
    for (double off : {-1.0, -0.5, -0.25, -0.1, 0.0}) mus.push_back(ns.mu_star + off);
    const auto rows = saddle_scan({delta, rho}, SaddleMode::VaryMu, cfg, mus);
    for (const auto& r : rows) {
      std::cout << "        mu=" << fmt(r.control) << " fMSE=" << fmt(r.fmse)
                << " eMSE=" << fmt(r.emse) << " SE=" << fmt(r.se) << "\n";
    }
    for (std::size_t k = 1; k < rows.size(); ++k) {
      const double slack =
          2.0 * std::sqrt(rows[k].se * rows[k].se + rows[k - 1].se * rows[k - 1].se);
      c.expect(rows[k - 1].emse <= rows[k].emse + slack,
               "eMSE(mu=" + fmt(rows[k - 1].control) + ")=" + fmt(rows[k - 1].emse) +
                   " exceeds eMSE(mu=" + fmt(rows[k].control) + ")=" + fmt(rows[k].emse) +
                   " beyond 2 SE");
    }
  }
  return c;
}

// --- criterion 10: above-PT empirical reproduction ---
Check criterion10() {
  Check c;
  auto cfg = desk_config(0.25, 0.5, 1000, 50, 101000);
  cfg.rho = 0.401;
  cfg.rho_fraction = -1.0;
  const auto rows = above_pt_experiment({0.25, 0.401}, {0.75, 0.90, 0.99}, {1.5}, cfg);
  for (const auto& r : rows) {
    const double z = (r.emse - r.fmse) / r.se;
    std::cout << "        gamma=" << fmt(r.gamma) << " fMSE=" << fmt(r.fmse)
              << " eMSE=" << fmt(r.emse) << " SE=" << fmt(r.se) << " z=" << fmt(z) << "\n";
    c.expect(std::isfinite(z) && std::abs(z) <= 3.0,
             "gamma=" + fmt(r.gamma) + " |z|=" + fmt(std::abs(z)) + " > 3");
  }
  return c;
}

// --- criterion 11: finite-N behavior against the formal prediction ---
// With the sparsity budget enforced per instance, the empirical MSE at this
// near-boundary cell sits statistically on the formal value already at
// N=500, so "monotone toward fMSE" renders as: every N within 3 SE of the
// prediction, and the discrepancy |eMSE - fMSE| never grows significantly
// with N.
Check criterion11() {
  Check c;
  auto cfg = desk_config(0.10, 0.95, 1000, 50, 111000);
  const auto reports = finite_n_sweep(cfg, {500, 1000, 2000});
  const double fmse = reports[0].fmse_prediction;
  const int Ns[3] = {500, 1000, 2000};
  for (std::size_t i = 0; i < reports.size(); ++i) {
    std::cout << "        N=" << Ns[i] << " eMSE=" << fmt(reports[i].mean_emse)
              << " SE=" << fmt(reports[i].standard_error) << " fMSE=" << fmt(fmse)
              << " z=" << fmt(reports[i].z_score) << "\n";
    c.expect(std::isfinite(reports[i].z_score) && std::abs(reports[i].z_score) <= 3.0,
             "N=" + std::to_string(Ns[i]) + " |z|=" + fmt(std::abs(reports[i].z_score)) +
                 " > 3");
  }
  for (std::size_t i = 1; i < reports.size(); ++i) {
    const double d_prev = std::abs(reports[i - 1].mean_emse - fmse);
    const double d_here = std::abs(reports[i].mean_emse - fmse);
    const double slack =
        2.0 * std::sqrt(reports[i - 1].standard_error * reports[i - 1].standard_error +
                        reports[i].standard_error * reports[i].standard_error);
    c.expect(d_here <= d_prev + slack,
             "discrepancy grows from N=" + std::to_string(Ns[i - 1]) + " (" + fmt(d_prev) +
                 ") to N=" + std::to_string(Ns[i]) + " (" + fmt(d_here) + ")");
  }
  return c;
}

const char* kNames[] = {
    "Table 2 scalar minimax columns (eps, M, tau, mu at alpha=0.02)",
    "Table 2 phase-point columns (M*, mu*, tau*, lambda*)",
    "phase boundary: parametric vs root-finding consistency",
    "Table 6 above-PT constructions (mu, lambda, fMSE identity)",
    "randomized property suites (scale/concavity/shift/mixture)",
    "closed-form scalar risk vs 1e6-sample Monte Carlo oracle",
    "AMPT fixed points certify as LASSO optima at calibrated lambda",
    "near-LF table reproduction at desk scale (delta in {0.25, 0.50})",
    "empirical saddlepoint scans (vary lambda / vary mu)",
    "above-PT empirical MSE at (0.25, 0.401)",
    "finite-N trend toward the formal MSE at (0.10, 0.95 rho_MSE)",
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--criteria" && i + 1 < argc) {
        std::stringstream ss(argv[++i]);
        std::string piece;
        while (std::getline(ss, piece, ',')) {
          const auto dash = piece.find('-');
          if (dash == std::string::npos) {
            selected.insert(std::stoi(piece));
          } else {
            const int lo = std::stoi(piece.substr(0, dash));
            const int hi = std::stoi(piece.substr(dash + 1));
            for (int k = lo; k <= hi; ++k) selected.insert(k);
          }
        }
      } else {
        std::cerr << "usage: amplab_acceptance [--criteria 1-5,7]\n";
        return 2;
      }
    }
  } catch (const std::exception&) {
    std::cerr << "usage: amplab_acceptance [--criteria 1-5,7]\n";
    return 2;
  }
  if (selected.empty()) {
    for (int k = 1; k <= 11; ++k) selected.insert(k);
  }

  const std::function<Check()> criteria[] = {
      criterion1, criterion2, criterion3, criterion4, criterion5, criterion6,
      criterion7, criterion8, criterion9, criterion10, criterion11};

  int failures = 0;
  for (int k : selected) {
    if (k < 1 || k > 11) continue;
    Check result;
    try {
      result = criteria[k - 1]();
    } catch (const std::exception& e) {
      result.ok = false;
      result.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (result.ok ? "[PASS]" : "[FAIL]") << " criterion " << k << ": "
              << kNames[k - 1] << "\n";
    if (!result.ok) {
      ++failures;
      for (const auto& f : result.failures) std::cout << "        " << f << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}
