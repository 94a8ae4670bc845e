#include "amplab/state_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "amplab/scalar_risk.hpp"

namespace amplab {

void SEParams::validate() const {
  prior.validate();
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("se: delta outside (0,1)");
  if (sigma < 0.0) throw std::invalid_argument("se: negative sigma");
  if (!(tau > 0.0)) throw std::invalid_argument("se: tau must be positive");
  if (sigma == 0.0 && prior.second_moment() == 0.0) {
    throw std::invalid_argument("se: sigma = 0 with zero-second-moment prior is degenerate");
  }
}

double mse_map(double m, const SEParams& params) {
  if (m < 0.0) throw std::invalid_argument("mse_map: negative m");
  return scalar_mse(params.prior, params.npi(m), params.tau);
}

namespace {

double stability_at(const SEParams& params, double m_star) {
  const double h = std::max(1e-6, 1e-6 * m_star);
  if (m_star - h >= 0.0) {
    return (mse_map(m_star + h, params) - mse_map(m_star - h, params)) / (2.0 * h);
  }
  return (mse_map(m_star + h, params) - mse_map(m_star, params)) / h;
}

SEFixedPoint finish(const SEParams& params, double m_star, int iterations,
                    std::vector<double> trajectory) {
  SEFixedPoint fp;
  fp.m_star = m_star;
  fp.stability = stability_at(params, m_star);
  fp.iterations = iterations;
  fp.trajectory = std::move(trajectory);
  fp.residual = std::abs(mse_map(m_star, params) - m_star);
  return fp;
}

}  // namespace

SEFixedPoint find_hfp(const SEParams& params, const Tolerance& tol) {
  params.validate();
  const double m0 = params.prior.second_moment();
  const double divergence_guard = 1e12 * (1.0 + params.sigma * params.sigma + m0);

  std::vector<double> trajectory{m0};
  double m = m0;
  double prev_residual = std::numeric_limits<double>::infinity();
  bool slow = false;
  int t = 0;
  for (; t < tol.max_iter; ++t) {
    const double m_next = mse_map(m, params);
    trajectory.push_back(m_next);
    const double residual = std::abs(m_next - m);
    if (residual <= tol.abs_tol + tol.rel_tol * std::max(std::abs(m), std::abs(m_next))) {
      return finish(params, m_next, t + 1, std::move(trajectory));
    }
    if (m_next > divergence_guard) {
      throw MaxIterExceeded("find_hfp: state evolution diverges", m_next, residual);
    }
    // Contraction ratio near 1 means SC ~ 1 (near phase transition): switch
    // to bisection on Psi(m) - m rather than crawling.
    if (t > 20 && residual >= (1.0 - 1e-3) * prev_residual) {
      slow = true;
      m = m_next;
      break;
    }
    prev_residual = residual;
    m = m_next;
  }
  if (!slow) {
    throw MaxIterExceeded("find_hfp: max iterations", m, prev_residual);
  }

  const auto g = [&](double x) { return mse_map(x, params) - x; };
  double lo, hi;
  if (g(m) <= 0.0) {
    // Decreasing branch: the root lies below the current iterate.
    hi = m;
    lo = 0.0;
    if (params.sigma == 0.0) {
      lo = std::max(m * 1e-12, 1e-300);
      if (g(lo) <= 0.0) {
        // No sign change left of the iterate: HFP is 0.
        return finish(params, 0.0, t + 1, std::move(trajectory));
      }
    }
  } else {
    lo = m;
    hi = std::max(2.0 * m, 1.0);
    int doublings = 0;
    while (g(hi) > 0.0) {
      hi *= 2.0;
      if (hi > divergence_guard || ++doublings > 200) {
        throw MaxIterExceeded("find_hfp: state evolution diverges", hi, g(hi));
      }
    }
  }
  const double m_star = find_root(g, Interval{lo, hi}, Tolerance{tol.abs_tol, tol.rel_tol, 400});
  return finish(params, m_star, t + 1, std::move(trajectory));
}

double atom_detect(double mu, double tau, bool nonneg) {
  const double pm = normal_cdf(mu - tau);
  if (nonneg) return pm;
  return pm + normal_cdf(-mu - tau);
}

double atom_mae(double mu, double tau, bool nonneg) {
  const double up = normal_pdf(tau - mu) + (mu - tau) * normal_cdf(mu - tau);
  if (nonneg) return up;
  return up + normal_pdf(tau + mu) - (mu + tau) * normal_cdf(-mu - tau);
}

double atom_msr(double mu, double tau, bool nonneg) {
  const double pm = normal_cdf(mu - tau);
  const double fm = normal_pdf(tau - mu);
  if (nonneg) {
    return tau * tau * pm + (1.0 + mu * mu) * (1.0 - pm) - (tau + mu) * fm;
  }
  const double pp = normal_cdf(-mu - tau);
  const double fp = normal_pdf(tau + mu);
  return tau * tau * (pm + pp) + (1.0 + mu * mu) * (1.0 - pm - pp) +
         2.0 * mu * (fp - fm) - (tau + mu) * fp - (tau - mu) * fm;
}

EquilibriumReport equilibrium_report(const SEParams& params, const SEFixedPoint& fp) {
  const double npi = params.npi(fp.m_star);
  const double scale = std::sqrt(npi);
  const double theta = params.tau * scale;
  const bool nonneg = params.prior.sign_constrained;

  double dr = 0.0, mae = 0.0, msr = 0.0;
  for (std::size_t i = 0; i < params.prior.atoms.size(); ++i) {
    const double w = params.prior.weights[i];
    const double mu = params.prior.atoms[i] / scale;
    dr += w * atom_detect(mu, params.tau, nonneg);
    mae += w * atom_mae(mu, params.tau, nonneg);
    msr += w * atom_msr(mu, params.tau, nonneg);
  }
  EquilibriumReport rep;
  rep.eq_mse = fp.m_star;
  rep.npi = npi;
  rep.theta = theta;
  rep.eq_dr = dr;
  rep.eq_mae = scale * mae;
  rep.eq_msr = npi * msr;
  rep.eq_pmsr = rep.eq_msr / 2.0 + theta * (1.0 - dr / params.delta) * rep.eq_mae;
  return rep;
}

double formal_observable(ObservableKind kind, const SEParams& params, const SEFixedPoint& fp) {
  const EquilibriumReport rep = equilibrium_report(params, fp);
  const double eps = params.prior.epsilon();
  const bool nonneg = params.prior.sign_constrained;
  const double scale = std::sqrt(rep.npi);

  const double false_detect_mass =
      params.prior.mass_at_zero() * atom_detect(0.0, params.tau, nonneg);
  const auto missed_mass = [&] {
    double md = 0.0;
    for (std::size_t i = 0; i < params.prior.atoms.size(); ++i) {
      if (params.prior.atoms[i] == 0.0) continue;
      md += params.prior.weights[i] *
            (1.0 - atom_detect(params.prior.atoms[i] / scale, params.tau, nonneg));
    }
    return md;
  };

  switch (kind) {
    case ObservableKind::MSE:
      return rep.eq_mse;
    case ObservableKind::DR:
      return rep.eq_dr;
    case ObservableKind::FAR:
      if (eps >= 1.0) throw std::domain_error("FAR undefined: no mass at zero");
      return false_detect_mass / (1.0 - eps);
    case ObservableKind::MDR:
      if (eps <= 0.0) throw std::domain_error("MDR undefined: rho*delta = 0");
      return missed_mass() / eps;
    case ObservableKind::FDeR:
      if (eps <= 0.0) throw std::domain_error("FDeR undefined: rho*delta = 0");
      return false_detect_mass / eps;
    case ObservableKind::FDR: {
      if (eps <= 0.0) throw std::domain_error("FDR undefined: rho*delta = 0");
      if (rep.eq_dr <= 0.0) throw std::domain_error("FDR undefined: DR = 0");
      return (false_detect_mass / eps) / rep.eq_dr;
    }
  }
  throw std::logic_error("unreachable observable kind");
}

}  // namespace amplab
