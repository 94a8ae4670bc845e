#include "amplab/lasso.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "amplab/scalar_risk.hpp"

namespace amplab {

namespace {

struct CDWork {
  const ProblemInstance& inst;
  double lambda;
  bool nonneg;
  Eigen::VectorXd colnorm2;
  Eigen::VectorXd x;
  Eigen::VectorXd r;  // y - A x, maintained incrementally

  CDWork(const ProblemInstance& instance, double lam, bool nn, const Eigen::VectorXd* warm)
      : inst(instance), lambda(lam), nonneg(nn) {
    colnorm2.resize(inst.N);
    for (int j = 0; j < inst.N; ++j) colnorm2[j] = inst.A.col(j).squaredNorm();
    if (warm != nullptr && warm->size() == inst.N) {
      x = *warm;
      if (nonneg) x = x.cwiseMax(0.0);
      r = inst.y - inst.A * x;
    } else {
      x = Eigen::VectorXd::Zero(inst.N);
      r = inst.y;
    }
  }

  double update_coordinate(int j) {
    const double cn = colnorm2[j];
    if (cn <= 0.0) return 0.0;
    const double xj = x[j];
    const double rho_j = inst.A.col(j).dot(r) + cn * xj;
    const double xj_new =
        nonneg ? std::max(0.0, rho_j - lambda) / cn : soft_threshold(rho_j, lambda) / cn;
    const double step = xj_new - xj;
    if (step != 0.0) {
      r.noalias() -= inst.A.col(j) * step;
      x[j] = xj_new;
    }
    return std::abs(step) * std::sqrt(cn);
  }

  double sweep_all() {
    double max_step = 0.0;
    for (int j = 0; j < inst.N; ++j) max_step = std::max(max_step, update_coordinate(j));
    return max_step;
  }

  double sweep_active(const std::vector<int>& active) {
    double max_step = 0.0;
    for (int j : active) max_step = std::max(max_step, update_coordinate(j));
    return max_step;
  }

  double objective() const {
    return 0.5 * r.squaredNorm() + lambda * x.lpNorm<1>();
  }

  // Gap against the dual point obtained by scaling the residual into the
  // dual-feasible set ||A^T theta||_inf <= lambda (one-sided for nonneg).
  double duality_gap() {
    r = inst.y - inst.A * x;  // refresh to kill incremental drift
    const Eigen::VectorXd g = inst.A.transpose() * r;
    double gmax = 0.0;
    if (nonneg) {
      gmax = std::max(0.0, g.maxCoeff());
    } else {
      gmax = g.cwiseAbs().maxCoeff();
    }
    const double s = (gmax > lambda && gmax > 0.0) ? lambda / gmax : 1.0;
    const double dual = s * r.dot(inst.y) - 0.5 * s * s * r.squaredNorm();
    return objective() - dual;
  }
};

}  // namespace

LassoSolution solve_lasso(const ProblemInstance& instance, double lambda, bool nonneg,
                          const Tolerance& tol, const Eigen::VectorXd* warm_start) {
  if (lambda < 0.0) throw std::invalid_argument("solve_lasso: negative lambda");
  const double lambda_max = (instance.A.transpose() * instance.y).cwiseAbs().maxCoeff();
  if (lambda == 0.0) {
    // Basis-pursuit limit proxy; the exact lambda = 0 program is out of the
    // solver contract.
    lambda = 1e-6 * lambda_max;
  }

  // Cold starts at penalties far below lambda_max stall coordinate descent
  // (the whole support activates at once). Continuation along a geometric
  // penalty path keeps each stage well conditioned.
  Eigen::VectorXd continued;
  if (warm_start == nullptr && lambda < 0.01 * lambda_max && lambda_max > 0.0) {
    Tolerance stage = tol;
    stage.abs_tol = std::max(tol.abs_tol, 1e-7);
    stage.max_iter = std::max(1000, tol.max_iter / 20);
    const Eigen::VectorXd* warm = nullptr;
    for (double lam = 0.1 * lambda_max; lam > lambda; lam *= 0.25) {
      continued = solve_lasso(instance, lam, nonneg, stage, warm).xhat;
      warm = &continued;
    }
    if (warm != nullptr) warm_start = warm;
  }

  CDWork work(instance, lambda, nonneg, warm_start);
  int sweeps = 0;
  double gap = std::numeric_limits<double>::infinity();

#ifndef NDEBUG
  double obj_prev = work.objective();
#endif

  while (sweeps < tol.max_iter) {
    work.sweep_all();
    ++sweeps;
#ifndef NDEBUG
    const double obj_now = work.objective();
    assert(obj_now <= obj_prev + 1e-9 * (1.0 + std::abs(obj_prev)));
    obj_prev = obj_now;
#endif
    std::vector<int> active;
    active.reserve(instance.N);
    for (int j = 0; j < instance.N; ++j) {
      if (work.x[j] != 0.0) active.push_back(j);
    }
    for (int inner = 0; inner < 100 && sweeps < tol.max_iter; ++inner) {
      const double step = work.sweep_active(active);
      ++sweeps;
      if (step < 1e-12 * (1.0 + work.inst.y.norm())) break;
    }
    gap = work.duality_gap();
    if (gap <= tol.abs_tol * (1.0 + std::abs(work.objective()))) break;
  }

  LassoSolution sol;
  sol.xhat = work.x;
  sol.lambda = lambda;
  sol.objective = work.objective();
  sol.duality_gap = gap;
  sol.iterations = sweeps;
  sol.support_size = static_cast<int>((work.x.array() != 0.0).count());
  return sol;
}

std::vector<std::pair<double, double>> lasso_path_mse(const ProblemInstance& instance,
                                                      const std::vector<double>& lambdas,
                                                      bool nonneg, const Tolerance& tol) {
  if (lambdas.empty()) throw std::invalid_argument("lasso_path_mse: empty lambda list");
  std::vector<std::size_t> order(lambdas.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lambdas[a] > lambdas[b]; });

  std::vector<std::pair<double, double>> out(lambdas.size());
  Eigen::VectorXd warm;
  bool have_warm = false;
  for (std::size_t idx : order) {
    const double lam = lambdas[idx];
    if (!(lam > 0.0)) throw std::invalid_argument("lasso_path_mse: lambdas must be positive");
    const LassoSolution sol =
        solve_lasso(instance, lam, nonneg, tol, have_warm ? &warm : nullptr);
    warm = sol.xhat;
    have_warm = true;
    const double mse = (sol.xhat - instance.x0).squaredNorm() / instance.N;
    out[idx] = {lam, mse};
  }
  return out;
}

}  // namespace amplab
