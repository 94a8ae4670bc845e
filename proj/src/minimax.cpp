#include "amplab/minimax.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "amplab/scalar_risk.hpp"

namespace amplab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Calibration value theta_inf (1 - EqDR/delta) without the saturation guard;
// may be negative or -inf (divergent evolution), which the root finders need.
double lambda_raw(double tau, const SEParams& base) {
  SEParams p = base;
  p.tau = tau;
  try {
    const SEFixedPoint fp = find_hfp(p);
    const EquilibriumReport eq = equilibrium_report(p, fp);
    return eq.theta * (1.0 - eq.eq_dr / p.delta);
  } catch (const MaxIterExceeded&) {
    // Divergent evolution: npi -> inf, the rescaled prior collapses to a
    // point mass at zero, EqDR -> detect(0, tau) > delta.
    const double dr = atom_detect(0.0, tau, p.prior.sign_constrained);
    return tau * 1e150 * (1.0 - dr / p.delta);
  }
}

double eq_dr_at(double tau, const SEParams& base) {
  SEParams p = base;
  p.tau = tau;
  try {
    const SEFixedPoint fp = find_hfp(p);
    return equilibrium_report(p, fp).eq_dr;
  } catch (const MaxIterExceeded&) {
    return atom_detect(0.0, tau, p.prior.sign_constrained);
  }
}
}  // namespace

void PhasePoint::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("phase point: delta outside (0,1)");
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("phase point: rho outside (0,1)");
}

double phase_boundary(double delta, bool sign_constrained) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("phase_boundary: delta outside (0,1)");
  }
  // M(rho delta) is increasing in rho with M(0+) -> 0 and M(eps) > eps, so the
  // bracket always carries a sign change.
  return find_root(
      [delta, sign_constrained](double rho) {
        return minimax_scalar(rho * delta, sign_constrained).minimax_mse - delta;
      },
      Interval{1e-6, 1.0 - 1e-6}, Tolerance{1e-12, 1e-12, 400});
}

BoundaryPoint phase_boundary_parametric(double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("phase_boundary_parametric: tau must be positive");
  const double phi = normal_pdf(tau);
  const double tail = normal_cdf(-tau);
  const double delta = 2.0 * phi / (tau + 2.0 * (phi - tau * tail));
  const double rho = 1.0 - tau * tail / phi;
  return BoundaryPoint{delta, rho};
}

PhasePointReport noise_sensitivity(const PhasePoint& point, double alpha) {
  point.validate();
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("noise_sensitivity: alpha outside (0,1)");
  }
  const double eps = point.epsilon();
  const MinimaxScalarResult mm = minimax_scalar(eps, point.sign_constrained);

  PhasePointReport rep;
  rep.epsilon = eps;
  rep.tau_star = mm.minimax_tau;
  rep.alpha = alpha;
  rep.below_pt = mm.minimax_mse < point.delta;
  if (!rep.below_pt) {
    rep.m_star_sensitivity = kInf;
    rep.npi_star = kInf;
    rep.mu_star = kInf;
    rep.lambda_star = kInf;
    return rep;
  }
  rep.m_star_sensitivity = mm.minimax_mse / (1.0 - mm.minimax_mse / point.delta);
  rep.npi_star = 1.0 + rep.m_star_sensitivity / point.delta;
  const double mu_unit =
      least_favorable_mu(eps, alpha, mm.minimax_tau, point.sign_constrained);
  rep.mu_star = mu_unit * std::sqrt(rep.npi_star);
  // Saddlepoint penalty: fNPI pinned at NPI*, detection rate of the near-LF
  // prior rescaled there. (The equilibrium-self-consistent variant is
  // maximin_lambda.)
  const double dr = (1.0 - eps) * atom_detect(0.0, mm.minimax_tau, point.sign_constrained) +
                    eps * atom_detect(mu_unit, mm.minimax_tau, point.sign_constrained);
  rep.lambda_star = mm.minimax_tau * std::sqrt(rep.npi_star) * (1.0 - dr / point.delta);
  return rep;
}

double maximin_lambda(const PhasePoint& point, double alpha, double sigma) {
  point.validate();
  if (!(sigma > 0.0)) throw std::invalid_argument("maximin_lambda: sigma must be positive");
  const double eps = point.epsilon();
  const MinimaxScalarResult mm = minimax_scalar(eps, point.sign_constrained);
  if (!(mm.minimax_mse < point.delta)) {
    throw AbovePT("maximin_lambda: point is above the phase boundary");
  }
  const double m_star = mm.minimax_mse / (1.0 - mm.minimax_mse / point.delta);
  const double npi_star = 1.0 + m_star / point.delta;
  const double mu_unit =
      least_favorable_mu(eps, alpha, mm.minimax_tau, point.sign_constrained);
  const DiscretePrior near_lf = DiscretePrior::three_point(
      eps, mu_unit * std::sqrt(npi_star), point.sign_constrained);

  const SEParams params{point.delta, 1.0, mm.minimax_tau, near_lf};
  const SEFixedPoint fp = find_hfp(params);
  const EquilibriumReport eq = equilibrium_report(params, fp);
  return sigma * eq.theta * (1.0 - eq.eq_dr / point.delta);
}

double calibrate_tau_to_lambda(double tau, const SEParams& params) {
  if (!(tau > 0.0)) throw std::invalid_argument("calibrate: tau must be positive");
  SEParams p = params;
  p.tau = tau;
  SEFixedPoint fp;
  try {
    fp = find_hfp(p);
  } catch (const MaxIterExceeded&) {
    // Divergent evolution has limit detection rate detect(0, tau) > delta:
    // the model is saturated at this tau.
    if (atom_detect(0.0, tau, p.prior.sign_constrained) >= p.delta) {
      throw OversaturatedModel("calibrate: EqDR >= delta, calibration undefined");
    }
    throw;
  }
  const EquilibriumReport eq = equilibrium_report(p, fp);
  if (eq.eq_dr >= p.delta) {
    throw OversaturatedModel("calibrate: EqDR >= delta, calibration undefined");
  }
  return eq.theta * (1.0 - eq.eq_dr / p.delta);
}

double calibrate_lambda_to_tau(double lambda, const SEParams& params) {
  if (lambda < 0.0) throw std::invalid_argument("calibrate: negative lambda");

  // tau_0: the smallest tau with EqDR(tau) <= delta, located on EqDR - delta.
  double lo = 1.0;
  while (eq_dr_at(lo, params) <= params.delta) {
    lo *= 0.5;
    if (lo < 1e-8) break;
  }
  double hi = std::max(2.0 * lo, 2.0);
  int doublings = 0;
  while (eq_dr_at(hi, params) > params.delta) {
    hi *= 2.0;
    if (++doublings > 60) throw BracketFailure("calibrate: cannot bracket tau_0");
  }
  const double tau0 =
      find_root([&](double tau) { return eq_dr_at(tau, params) - params.delta; },
                Interval{lo, hi}, Tolerance{1e-11, 1e-11, 400});
  if (lambda == 0.0) return tau0;

  double tau_hi = std::max(2.0 * tau0, 1.0);
  doublings = 0;
  while (lambda_raw(tau_hi, params) < lambda) {
    tau_hi *= 2.0;
    if (++doublings > 60) throw BracketFailure("calibrate: cannot bracket tau(lambda)");
  }
  return find_root([&](double tau) { return lambda_raw(tau, params) - lambda; },
                   Interval{tau0 * (1.0 + 1e-12), tau_hi}, Tolerance{1e-11, 1e-11, 400});
}

AbovePTConstruction above_pt_construction(const PhasePoint& point, double gamma, double tau) {
  point.validate();
  if (!(tau > 0.0)) throw std::invalid_argument("above_pt_construction: tau must be positive");
  const double eps = point.epsilon();
  const bool nonneg = point.sign_constrained;
  if (minimax_scalar(eps, nonneg).minimax_mse < point.delta) {
    throw std::invalid_argument("above_pt_construction: point is below phase transition");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw InadmissibleGamma("above_pt_construction: gamma outside (0,1)");
  }
  const double mse0 = nonneg ? atom_mse_pos(0.0, tau) : atom_mse(0.0, tau);
  if (!(mse0 < gamma * point.delta)) {
    throw InadmissibleGamma("above_pt_construction: mse(0,tau) >= gamma*delta");
  }
  const double worst = scalar_mse_worst_case(eps, tau, nonneg);
  if (!(gamma * point.delta < worst)) {
    throw InadmissibleGamma("above_pt_construction: gamma*delta >= worst-case risk at tau");
  }

  AbovePTConstruction out;
  out.gamma = gamma;
  out.tau = tau;
  out.alpha_star = 1.0 - gamma * point.delta / worst;
  out.mu_unit = least_favorable_mu(eps, out.alpha_star, tau, nonneg);
  out.fnpi = 1.0 / (1.0 - gamma);
  out.fmse = point.delta * gamma / (1.0 - gamma);
  out.mu = out.mu_unit * std::sqrt(out.fnpi);
  out.eq_dr = (1.0 - eps) * atom_detect(0.0, tau, nonneg) +
              eps * atom_detect(out.mu_unit, tau, nonneg);
  if (out.eq_dr >= point.delta) {
    throw OversaturatedModel("above_pt_construction: EqDR >= delta");
  }
  out.lambda = tau * std::sqrt(out.fnpi) * (1.0 - out.eq_dr / point.delta);
  return out;
}

double quasi_affinity_bound(const DiscretePrior& nu0, const DiscretePrior& nu1, double w,
                            double delta, double sigma, double tau) {
  const SEParams p0{delta, sigma, tau, nu0};
  const double npi0 = p0.npi(find_hfp(p0).m_star);

  const DiscretePrior mix = DiscretePrior::mixture(nu0, nu1, w);
  const SEParams pm{delta, sigma, tau, mix};
  const double npi_mix = pm.npi(find_hfp(pm).m_star);

  const double scale = 1.0 / std::sqrt(npi_mix);
  const double mse0 = scalar_mse(nu0.scaled(scale), 1.0, tau);
  const double mse1 = scalar_mse(nu1.scaled(scale), 1.0, tau);
  return ((1.0 - w) * mse0 + w * mse1) * npi0;
}

}  // namespace amplab
