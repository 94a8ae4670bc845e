#include "amplab/amp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "amplab/scalar_risk.hpp"

namespace amplab {

namespace {

double residual_scale(const Eigen::VectorXd& z, ResidualScale kind) {
  const int n = static_cast<int>(z.size());
  if (kind == ResidualScale::RMS) {
    return z.norm() / std::sqrt(static_cast<double>(n));
  }
  // MAD / Phi^{-1}(3/4)
  std::vector<double> absz(n);
  for (int i = 0; i < n; ++i) absz[i] = std::abs(z[i]);
  auto mid = absz.begin() + n / 2;
  std::nth_element(absz.begin(), mid, absz.end());
  double med = *mid;
  if (n % 2 == 0) {
    auto lower = std::max_element(absz.begin(), mid);
    med = 0.5 * (med + *lower);
  }
  return med / 0.6744897501960817;
}

}  // namespace

AMPResult amp_iterate(const ProblemInstance& instance, double tau, const Tolerance& tol,
                      ResidualScale scale, bool nonneg,
                      const std::function<void(const AMPState&)>& on_iteration) {
  if (!(tau > 0.0)) throw std::invalid_argument("amp_iterate: tau must be positive");
  const int n = instance.n;
  const int N = instance.N;
  const double y_norm = instance.y.norm();

  // Marchenko-Pastur proxy for the smallest singular value of the fat A.
  const double s_min = std::max(1.0 / std::sqrt(instance.delta) - 1.0, 1e-3);
  const double guard = 1e6 * std::max(y_norm, 1.0) / s_min;

  AMPState st;
  st.estimate = Eigen::VectorXd::Zero(N);
  st.residual = instance.y;  // z^0 = y (z^{-1} = 0, df_0 = 0)
  st.df = 0;
  st.sigma_t = residual_scale(st.residual, scale);
  st.theta_t = tau * st.sigma_t;
  st.iteration = 0;

  Eigen::VectorXd pseudo(N), next(N), prev(N);
  double best_change = std::numeric_limits<double>::infinity();
  int stalled = 0;
  double damping = 0.0;  // weight kept on the old iterate

  for (int t = 0; t < tol.max_iter; ++t) {
    pseudo.noalias() = instance.A.transpose() * st.residual;
    pseudo += st.estimate;
    if (nonneg) {
      for (int j = 0; j < N; ++j) next[j] = soft_threshold_pos(pseudo[j], st.theta_t);
    } else {
      for (int j = 0; j < N; ++j) next[j] = soft_threshold(pseudo[j], st.theta_t);
    }

    // Convergence is judged on the undamped proposal, so damping cannot fake
    // a fixed point; damped updates keep the same fixed points.
    const double change = (next - st.estimate).norm();
    const double rel_change = change / std::max(st.estimate.norm(), 1e-12);

    // Oscillation guard: 50 consecutive iterations without a new minimum of
    // the relative change engage averaging with the previous iterate,
    // escalating while the cycle persists. Finite-n limit cycles (discrete
    // df feedback at small n) need the sustained form.
    const bool at_fixed_point = rel_change < tol.rel_tol;
    if (!at_fixed_point) {
      if (rel_change < best_change) {
        best_change = rel_change;
        stalled = 0;
      } else if (++stalled >= 50) {
        damping = (damping == 0.0) ? 0.5 : std::min(0.95, 0.5 * (1.0 + damping));
        stalled = 0;
        best_change = rel_change;
      }
    }
    // The Onsager coefficient is the active count of the thresholder output
    // (its derivative sum). A damped blend would inflate the support union
    // past n and destabilize the residual recursion.
    const int df_onsager = static_cast<int>((next.array() != 0.0).count());
    // Once at the fixed point, keep the exact thresholder output: blending
    // leaves decaying ghosts on dead coordinates and pollutes df.
    if (damping > 0.0 && !at_fixed_point) {
      next = (1.0 - damping) * next + damping * st.estimate;
    }

    st.estimate.swap(next);
    st.iteration = t + 1;
    if (st.estimate.norm() > guard) {
      throw Diverged("amp_iterate: estimate exceeded the divergence guard");
    }

    st.df = static_cast<int>((st.estimate.array() != 0.0).count());
    st.residual = instance.y - instance.A * st.estimate +
                  st.residual * (static_cast<double>(df_onsager) / n);
    st.sigma_t = residual_scale(st.residual, scale);
    st.theta_t = tau * st.sigma_t;
    if (on_iteration) on_iteration(st);

    if (at_fixed_point) {
      return AMPResult{std::move(st), true};
    }
  }
  return AMPResult{std::move(st), false};
}

KKTReport verify_lasso_kkt(const ProblemInstance& instance, const Eigen::VectorXd& xhat,
                           double lambda, double kkt_tol, bool nonneg) {
  if (lambda < 0.0) throw std::invalid_argument("verify_lasso_kkt: negative lambda");
  const Eigen::VectorXd r = instance.y - instance.A * xhat;
  const Eigen::VectorXd g = instance.A.transpose() * r;

  double worst_gradient = 0.0;
  double worst_sign = 0.0;
  for (int j = 0; j < instance.N; ++j) {
    if (nonneg) {
      worst_gradient = std::max(worst_gradient, g[j] - lambda);
      if (xhat[j] > 0.0) worst_sign = std::max(worst_sign, std::abs(g[j] - lambda));
      if (xhat[j] < 0.0) worst_sign = std::max(worst_sign, -xhat[j]);
    } else {
      worst_gradient = std::max(worst_gradient, std::abs(g[j]) - lambda);
      if (xhat[j] > 0.0) worst_sign = std::max(worst_sign, std::abs(g[j] - lambda));
      if (xhat[j] < 0.0) worst_sign = std::max(worst_sign, std::abs(g[j] + lambda));
    }
  }
  KKTReport rep;
  rep.worst_gradient = worst_gradient;
  rep.worst_sign = worst_sign;
  rep.pass = worst_gradient <= kkt_tol && worst_sign <= kkt_tol;
  return rep;
}

}  // namespace amplab
