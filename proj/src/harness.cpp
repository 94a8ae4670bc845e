#include "amplab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include "amplab/amp.hpp"
#include "amplab/instance.hpp"
#include "amplab/lasso.hpp"
#include "amplab/rng.hpp"
#include "amplab/scalar_risk.hpp"

#ifndef AMPLAB_GIT_REVISION
#define AMPLAB_GIT_REVISION "unknown"
#endif

namespace amplab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t instance_seed(std::uint64_t master, int trial_index) {
  return splitmix64(splitmix64(master) ^
                    splitmix64(0x5851F42D4C957F2DULL + static_cast<std::uint64_t>(trial_index)));
}

void reject_unknown_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (key == a) {
        ok = true;
        break;
      }
    }
    if (!ok) throw std::invalid_argument("config: unknown key \"" + key + "\" in " + where);
  }
}

std::map<std::string, double> empirical_observables(const Eigen::VectorXd& x0,
                                                    const Eigen::VectorXd& xhat,
                                                    double eps_nominal) {
  const int N = static_cast<int>(x0.size());
  int detected = 0, false_det = 0, missed = 0;
  for (int j = 0; j < N; ++j) {
    const bool on = xhat[j] != 0.0;
    const bool truth = x0[j] != 0.0;
    if (on) ++detected;
    if (on && !truth) ++false_det;
    if (!on && truth) ++missed;
  }
  std::map<std::string, double> obs;
  const double dn = static_cast<double>(N);
  const double dr = detected / dn;
  obs["MSE"] = (xhat - x0).squaredNorm() / dn;
  obs["DR"] = dr;
  obs["FAR"] = (eps_nominal < 1.0) ? false_det / ((1.0 - eps_nominal) * dn) : kNaN;
  obs["MDR"] = (eps_nominal > 0.0) ? missed / (eps_nominal * dn) : kNaN;
  obs["FDeR"] = (eps_nominal > 0.0) ? false_det / (eps_nominal * dn) : kNaN;
  obs["FDR"] = (dr > 0.0 && eps_nominal > 0.0) ? (false_det / (eps_nominal * dn)) / dr : kNaN;
  return obs;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("config: delta outside (0,1)");
  const bool has_rho = rho > 0.0;
  const bool has_frac = rho_fraction > 0.0;
  if (has_rho == has_frac) {
    throw std::invalid_argument("config: exactly one of rho / rho_fraction must be set");
  }
  if (has_rho && !(rho < 1.0)) throw std::invalid_argument("config: rho outside (0,1)");
  if (has_frac && !(rho_fraction < 2.0)) {
    throw std::invalid_argument("config: rho_fraction outside (0,2)");
  }
  if (sigma < 0.0) throw std::invalid_argument("config: negative sigma");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("config: alpha outside (0,1)");
  if (N < 50) throw std::invalid_argument("config: N < 50");
  if (replications < 1) throw std::invalid_argument("config: replications < 1");
  if (lambda_policy.kind == LambdaPolicy::Kind::TauCalibrated && !(lambda_policy.tau > 0.0)) {
    throw std::invalid_argument("config: tau-calibrated policy needs tau > 0");
  }
}

double ExperimentConfig::resolved_rho() const {
  if (rho > 0.0) return rho;
  return rho_fraction * phase_boundary(delta, nonneg);
}

ExperimentConfig parse_experiment_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("config: document must be a JSON object");
  reject_unknown_keys(doc,
                      {"delta", "rho", "rho_fraction", "sigma", "alpha", "N", "replications",
                       "seed", "solver", "lambda_policy", "prior", "nonneg"},
                      "top level");
  ExperimentConfig c;
  c.delta = doc.at("delta").get<double>();
  if (doc.contains("rho")) c.rho = doc["rho"].get<double>();
  if (doc.contains("rho_fraction")) c.rho_fraction = doc["rho_fraction"].get<double>();
  if (doc.contains("sigma")) c.sigma = doc["sigma"].get<double>();
  if (doc.contains("alpha")) c.alpha = doc["alpha"].get<double>();
  if (doc.contains("N")) c.N = doc["N"].get<int>();
  if (doc.contains("replications")) c.replications = doc["replications"].get<int>();
  if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("nonneg")) c.nonneg = doc["nonneg"].get<bool>();

  if (doc.contains("solver")) {
    const std::string s = doc["solver"].get<std::string>();
    if (s == "lasso") c.solver = SolverKind::Lasso;
    else if (s == "ampt") c.solver = SolverKind::Ampt;
    else if (s == "both") c.solver = SolverKind::Both;
    else throw std::invalid_argument("config: solver must be lasso|ampt|both");
  }

  if (doc.contains("lambda_policy")) {
    const auto& lp = doc["lambda_policy"];
    if (lp.is_string()) {
      if (lp.get<std::string>() != "maximin") {
        throw std::invalid_argument("config: string lambda_policy must be \"maximin\"");
      }
      c.lambda_policy.kind = LambdaPolicy::Kind::Maximin;
    } else if (lp.is_object()) {
      reject_unknown_keys(lp, {"explicit", "tau"}, "lambda_policy");
      if (lp.contains("explicit") == lp.contains("tau")) {
        throw std::invalid_argument("config: lambda_policy needs exactly one of explicit/tau");
      }
      if (lp.contains("explicit")) {
        c.lambda_policy.kind = LambdaPolicy::Kind::Explicit;
        c.lambda_policy.values = lp["explicit"].get<std::vector<double>>();
        if (c.lambda_policy.values.empty()) {
          throw std::invalid_argument("config: explicit lambda list is empty");
        }
      } else {
        c.lambda_policy.kind = LambdaPolicy::Kind::TauCalibrated;
        c.lambda_policy.tau = lp["tau"].get<double>();
      }
    } else {
      throw std::invalid_argument("config: malformed lambda_policy");
    }
  }

  if (doc.contains("prior")) {
    const auto& p = doc["prior"];
    if (!p.is_object()) throw std::invalid_argument("config: prior must be an object");
    const std::string kind = p.at("kind").get<std::string>();
    if (kind == "three_point") {
      reject_unknown_keys(p, {"kind", "alpha"}, "prior");
      c.prior_spec.kind = PriorSpec::Kind::ThreePoint;
      if (p.contains("alpha")) c.prior_spec.alpha = p["alpha"].get<double>();
    } else if (kind == "five_point_mixture") {
      reject_unknown_keys(p, {"kind", "gamma", "alpha1", "alpha2"}, "prior");
      c.prior_spec.kind = PriorSpec::Kind::FivePointMixture;
      if (p.contains("gamma")) c.prior_spec.gamma = p["gamma"].get<double>();
      if (p.contains("alpha1")) c.prior_spec.alpha1 = p["alpha1"].get<double>();
      if (p.contains("alpha2")) c.prior_spec.alpha2 = p["alpha2"].get<double>();
    } else if (kind == "atoms") {
      reject_unknown_keys(p, {"kind", "atoms", "weights"}, "prior");
      c.prior_spec.kind = PriorSpec::Kind::Explicit;
      c.prior_spec.atoms = p.at("atoms").get<std::vector<double>>();
      c.prior_spec.weights = p.at("weights").get<std::vector<double>>();
    } else {
      throw std::invalid_argument("config: prior kind must be three_point|five_point_mixture|atoms");
    }
  }

  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json doc;
  in >> doc;
  return parse_experiment_config(doc);
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json doc;
  doc["delta"] = c.delta;
  if (c.rho > 0.0) doc["rho"] = c.rho;
  if (c.rho_fraction > 0.0) doc["rho_fraction"] = c.rho_fraction;
  doc["sigma"] = c.sigma;
  doc["alpha"] = c.alpha;
  doc["N"] = c.N;
  doc["replications"] = c.replications;
  doc["seed"] = c.seed;
  switch (c.solver) {
    case SolverKind::Lasso: doc["solver"] = "lasso"; break;
    case SolverKind::Ampt: doc["solver"] = "ampt"; break;
    case SolverKind::Both: doc["solver"] = "both"; break;
  }
  switch (c.lambda_policy.kind) {
    case LambdaPolicy::Kind::Maximin: doc["lambda_policy"] = "maximin"; break;
    case LambdaPolicy::Kind::Explicit: doc["lambda_policy"] = {{"explicit", c.lambda_policy.values}}; break;
    case LambdaPolicy::Kind::TauCalibrated: doc["lambda_policy"] = {{"tau", c.lambda_policy.tau}}; break;
  }
  switch (c.prior_spec.kind) {
    case PriorSpec::Kind::ThreePoint:
      doc["prior"] = {{"kind", "three_point"}, {"alpha", c.prior_spec.alpha}};
      break;
    case PriorSpec::Kind::FivePointMixture:
      doc["prior"] = {{"kind", "five_point_mixture"},
                      {"gamma", c.prior_spec.gamma},
                      {"alpha1", c.prior_spec.alpha1},
                      {"alpha2", c.prior_spec.alpha2}};
      break;
    case PriorSpec::Kind::Explicit:
      doc["prior"] = {{"kind", "atoms"}, {"atoms", c.prior_spec.atoms},
                      {"weights", c.prior_spec.weights}};
      break;
  }
  doc["nonneg"] = c.nonneg;
  return doc;
}

ResolvedExperiment resolve_experiment(const ExperimentConfig& config) {
  config.validate();
  ResolvedExperiment res;
  res.rho = config.resolved_rho();
  const double eps = config.delta * res.rho;
  const PhasePoint point{config.delta, res.rho, config.nonneg};

  switch (config.prior_spec.kind) {
    case PriorSpec::Kind::ThreePoint: {
      const PhasePointReport ns = noise_sensitivity(point, config.prior_spec.alpha);
      if (!ns.below_pt) {
        throw AbovePT("resolve_experiment: three_point prior needs a below-PT phase point");
      }
      const double s = config.sigma > 0.0 ? config.sigma : 1.0;
      res.prior = DiscretePrior::three_point(eps, ns.mu_star * s, config.nonneg);
      break;
    }
    case PriorSpec::Kind::FivePointMixture: {
      const PhasePointReport ns1 = noise_sensitivity(point, config.prior_spec.alpha1);
      const PhasePointReport ns2 = noise_sensitivity(point, config.prior_spec.alpha2);
      if (!ns1.below_pt) {
        throw AbovePT("resolve_experiment: mixture prior needs a below-PT phase point");
      }
      const double s = config.sigma > 0.0 ? config.sigma : 1.0;
      const DiscretePrior nu0 = DiscretePrior::three_point(eps, ns1.mu_star * s, config.nonneg);
      const DiscretePrior nu1 = DiscretePrior::three_point(eps, ns2.mu_star * s, config.nonneg);
      res.prior = DiscretePrior::mixture(nu0, nu1, config.prior_spec.gamma);
      break;
    }
    case PriorSpec::Kind::Explicit: {
      res.prior.atoms = config.prior_spec.atoms;
      res.prior.weights = config.prior_spec.weights;
      res.prior.sign_constrained = config.nonneg;
      res.prior.validate();
      break;
    }
  }

  const SEParams se_params{config.delta, config.sigma, 1.0, res.prior};
  switch (config.lambda_policy.kind) {
    case LambdaPolicy::Kind::Maximin: {
      res.tau = minimax_scalar(eps, config.nonneg).minimax_tau;
      res.lambda = calibrate_tau_to_lambda(res.tau, se_params);
      break;
    }
    case LambdaPolicy::Kind::TauCalibrated: {
      res.tau = config.lambda_policy.tau;
      res.lambda = calibrate_tau_to_lambda(res.tau, se_params);
      break;
    }
    case LambdaPolicy::Kind::Explicit: {
      if (config.lambda_policy.values.size() != 1) {
        throw std::invalid_argument(
            "run_experiment: explicit lambda policy needs exactly one value "
            "(lists drive saddle scans)");
      }
      res.lambda = config.lambda_policy.values.front();
      res.tau = calibrate_lambda_to_tau(res.lambda, se_params);
      break;
    }
  }

  SEParams pred = se_params;
  pred.tau = res.tau;
  res.fmse = find_hfp(pred).m_star;
  return res;
}

AggregateReport aggregate_trials(const std::vector<TrialResult>& trials, double fmse) {
  AggregateReport rep;
  rep.fmse_prediction = fmse;
  double sum = 0.0;
  int n = 0;
  for (const auto& t : trials) {
    if (t.failed) continue;
    sum += t.empirical_mse;
    ++n;
  }
  rep.n_trials = n;
  if (n == 0) {
    rep.mean_emse = kNaN;
    rep.standard_error = kNaN;
    rep.z_score = kNaN;
    return rep;
  }
  rep.mean_emse = sum / n;
  double ss = 0.0;
  for (const auto& t : trials) {
    if (t.failed) continue;
    const double d = t.empirical_mse - rep.mean_emse;
    ss += d * d;
  }
  rep.standard_error = (n > 1) ? std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n)) : 0.0;
  rep.z_score =
      (rep.standard_error > 0.0) ? (rep.mean_emse - fmse) / rep.standard_error : kNaN;
  return rep;
}

namespace {

TrialResult run_single_trial(const ExperimentConfig& config, const ResolvedExperiment& res,
                             std::uint64_t seed) {
  TrialResult out;
  out.seed = seed;
  try {
    const ProblemInstance inst =
        generate_instance(config.delta, res.rho, config.sigma, res.prior, config.N, seed);
    Eigen::VectorXd xhat;
    if (config.solver == SolverKind::Lasso || config.solver == SolverKind::Both) {
      const LassoSolution sol = solve_lasso(inst, res.lambda, config.nonneg);
      xhat = sol.xhat;
      out.solver_iterations = sol.iterations;
      out.support_size = sol.support_size;
    }
    if (config.solver == SolverKind::Ampt || config.solver == SolverKind::Both) {
      const AMPResult amp =
          amp_iterate(inst, res.tau, amp_default_tolerance(), ResidualScale::RMS, config.nonneg);
      if (config.solver == SolverKind::Ampt) {
        xhat = amp.state.estimate;
        out.solver_iterations = amp.state.iteration;
        out.support_size = amp.state.df;
      } else {
        out.observables["amp_MSE"] =
            (amp.state.estimate - inst.x0).squaredNorm() / inst.N;
        out.observables["amp_lasso_rel_diff"] =
            (amp.state.estimate - xhat).norm() / std::max(xhat.norm(), 1e-12);
      }
    }
    out.empirical_mse = (xhat - inst.x0).squaredNorm() / inst.N;
    auto obs = empirical_observables(inst.x0, xhat, config.delta * res.rho);
    out.observables.insert(obs.begin(), obs.end());
  } catch (const std::exception& e) {
    out.failed = true;
    out.error = e.what();
    out.empirical_mse = kNaN;
    out.support_size = 0;
    out.solver_iterations = 0;
  }
  return out;
}

}  // namespace

AggregateReport run_experiment(const ExperimentConfig& config,
                               std::vector<TrialResult>* trials_out) {
  const ResolvedExperiment res = resolve_experiment(config);
  const std::uint64_t master = effective_seed(config.seed);

  std::vector<TrialResult> trials(config.replications);
  parallel_for_trials(config.replications, [&](int i) {
    trials[i] = run_single_trial(config, res, instance_seed(master, i));
  });

  AggregateReport rep = aggregate_trials(trials, res.fmse);
  if (std::isfinite(rep.z_score) && std::abs(rep.z_score) > 3.0) {
    const double rho_pt = phase_boundary(config.delta, config.nonneg);
    if (res.rho >= 0.9 * rho_pt) rep.escalation_hint = true;
  }
  if (trials_out != nullptr) *trials_out = std::move(trials);
  return rep;
}

std::vector<AggregateReport> finite_n_sweep(const ExperimentConfig& config,
                                            const std::vector<int>& Ns) {
  if (Ns.empty()) throw std::invalid_argument("finite_n_sweep: empty N list");
  for (std::size_t i = 1; i < Ns.size(); ++i) {
    if (Ns[i] <= Ns[i - 1]) throw std::invalid_argument("finite_n_sweep: Ns must increase");
  }
  std::vector<AggregateReport> out;
  out.reserve(Ns.size());
  for (int n : Ns) {
    ExperimentConfig c = config;
    c.N = n;
    out.push_back(run_experiment(c));
  }
  return out;
}

void emit_contour_grid(ContourQuantity quantity, const GridSpec& grid, double alpha,
                       bool nonneg, const std::string& out_path) {
  if (grid.nx < 1 || grid.ny < 1) throw std::invalid_argument("contour: empty grid");
  std::vector<std::vector<std::string>> rows;
  rows.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
  for (int ix = 0; ix < grid.nx; ++ix) {
    const double delta = (ix + 0.5) / grid.nx;
    for (int iy = 0; iy < grid.ny; ++iy) {
      const double rho = (iy + 0.5) / grid.ny;
      const PhasePointReport rep = noise_sensitivity({delta, rho, nonneg}, alpha);
      double value;
      switch (quantity) {
        case ContourQuantity::MStar: value = rep.m_star_sensitivity; break;
        case ContourQuantity::MuStar: value = rep.mu_star; break;
        case ContourQuantity::LambdaStar: value = rep.lambda_star; break;
        case ContourQuantity::TauStar:
          value = rep.below_pt ? rep.tau_star : std::numeric_limits<double>::infinity();
          break;
      }
      rows.push_back({format_double(delta), format_double(rho), format_double(value)});
    }
  }
  write_csv(out_path, {"delta", "rho", "value"}, rows);
  const char* names[] = {"M*", "mu*", "lambda*", "tau*"};
  nlohmann::json cfg = {{"quantity", names[static_cast<int>(quantity)]},
                        {"grid", std::to_string(grid.nx) + "x" + std::to_string(grid.ny)},
                        {"alpha", alpha},
                        {"nonneg", nonneg}};
  write_manifest(out_path, cfg, 0);
}

std::vector<SaddleRow> saddle_scan(const PhasePoint& point, SaddleMode mode,
                                   const ExperimentConfig& config,
                                   const std::vector<double>& controls) {
  point.validate();
  ExperimentConfig base = config;
  base.delta = point.delta;
  base.rho = point.rho;
  base.rho_fraction = -1.0;
  base.nonneg = point.sign_constrained;
  base.validate();

  const double eps = point.epsilon();
  const double sigma = base.sigma;
  const double tau_pm = minimax_scalar(eps, point.sign_constrained).minimax_tau;
  const std::uint64_t master = effective_seed(base.seed);

  std::vector<SaddleRow> out;

  if (mode == SaddleMode::VaryLambda) {
    const PhasePointReport ns = noise_sensitivity(point, base.alpha);
    if (!ns.below_pt) throw AbovePT("saddle_scan: vary_lambda needs a below-PT point");
    const double lambda_star = maximin_lambda(point, base.alpha, sigma > 0 ? sigma : 1.0);
    std::vector<double> lambdas = controls;
    if (lambdas.empty()) {
      for (double m : {0.5, 1.0, 1.5, 2.25, 3.7}) lambdas.push_back(m * lambda_star);
    }
    const DiscretePrior prior = DiscretePrior::three_point(
        eps, ns.mu_star * (sigma > 0 ? sigma : 1.0), point.sign_constrained);
    const SEParams se_base{point.delta, sigma, tau_pm, prior};

    // Per-lambda formal predictions through the calibration inverse.
    std::vector<SaddleRow> rows(lambdas.size());
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      SEParams p = se_base;
      p.tau = calibrate_lambda_to_tau(lambdas[k], se_base);
      rows[k] = SaddleRow{lambdas[k], lambdas[k], find_hfp(p).m_star, kNaN, 0.0, 0.0, 0};
    }
    // One instance per trial, warm-started along the lambda path.
    std::vector<std::vector<double>> mse_per_lambda(lambdas.size());
    for (auto& v : mse_per_lambda) v.resize(base.replications, kNaN);
    parallel_for_trials(base.replications, [&](int i) {
      try {
        const ProblemInstance inst = generate_instance(point.delta, point.rho, sigma, prior,
                                                       base.N, instance_seed(master, i));
        const auto path = lasso_path_mse(inst, lambdas, point.sign_constrained);
        for (std::size_t k = 0; k < lambdas.size(); ++k) mse_per_lambda[k][i] = path[k].second;
      } catch (const std::exception&) {
        // left as NaN, dropped below
      }
    });
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      std::vector<TrialResult> trials;
      for (int i = 0; i < base.replications; ++i) {
        TrialResult t;
        t.seed = instance_seed(master, i);
        t.empirical_mse = mse_per_lambda[k][i];
        t.failed = !std::isfinite(t.empirical_mse);
        trials.push_back(t);
      }
      const AggregateReport agg = aggregate_trials(trials, rows[k].fmse);
      rows[k].emse = agg.mean_emse;
      rows[k].se = agg.standard_error;
      rows[k].n_trials = agg.n_trials;
      out.push_back(rows[k]);
    }
    return out;
  }

  if (mode == SaddleMode::VaryMu) {
    const PhasePointReport ns = noise_sensitivity(point, base.alpha);
    if (!ns.below_pt) throw AbovePT("saddle_scan: vary_mu needs a below-PT point");
    const double s = sigma > 0 ? sigma : 1.0;
    const double mu_star = ns.mu_star * s;
    std::vector<double> mus = controls;
    if (mus.empty()) {
      for (double off : {-1.0, -0.5, -0.25, -0.1, 0.0, 0.1, 0.25, 0.5, 1.0}) {
        const double mu = mu_star + off * s;
        if (mu > 0.0) mus.push_back(mu);
      }
    }
    for (double mu : mus) {
      const DiscretePrior prior = DiscretePrior::three_point(eps, mu, point.sign_constrained);
      const SEParams params{point.delta, sigma, tau_pm, prior};
      const double lambda = calibrate_tau_to_lambda(tau_pm, params);
      const double fmse = find_hfp(params).m_star;

      ExperimentConfig c = base;
      c.prior_spec.kind = PriorSpec::Kind::Explicit;
      c.prior_spec.atoms = prior.atoms;
      c.prior_spec.weights = prior.weights;
      c.lambda_policy.kind = LambdaPolicy::Kind::Explicit;
      c.lambda_policy.values = {lambda};
      const AggregateReport agg = run_experiment(c);
      out.push_back(SaddleRow{mu, lambda, fmse, kNaN, agg.mean_emse, agg.standard_error,
                              agg.n_trials});
    }
    return out;
  }

  // Mixture mode: nu0 = nu(alpha1), nu1 = nu(alpha2), weight grid.
  const PhasePointReport ns1 = noise_sensitivity(point, base.prior_spec.alpha1);
  const PhasePointReport ns2 = noise_sensitivity(point, base.prior_spec.alpha2);
  if (!ns1.below_pt) throw AbovePT("saddle_scan: mixture needs a below-PT point");
  const double s = sigma > 0 ? sigma : 1.0;
  const DiscretePrior nu0 =
      DiscretePrior::three_point(eps, ns1.mu_star * s, point.sign_constrained);
  const DiscretePrior nu1 =
      DiscretePrior::three_point(eps, ns2.mu_star * s, point.sign_constrained);
  std::vector<double> weights = controls;
  if (weights.empty()) {
    for (int k = 0; k <= 10; ++k) weights.push_back(k / 10.0);
  }
  for (double w : weights) {
    const DiscretePrior prior = DiscretePrior::mixture(nu0, nu1, w);
    const SEParams params{point.delta, sigma, tau_pm, prior};
    const double lambda = calibrate_tau_to_lambda(tau_pm, params);
    const double fmse = find_hfp(params).m_star;
    const double bound = quasi_affinity_bound(nu0, nu1, w, point.delta, sigma, tau_pm);

    ExperimentConfig c = base;
    c.prior_spec.kind = PriorSpec::Kind::Explicit;
    c.prior_spec.atoms = prior.atoms;
    c.prior_spec.weights = prior.weights;
    c.lambda_policy.kind = LambdaPolicy::Kind::Explicit;
    c.lambda_policy.values = {lambda};
    const AggregateReport agg = run_experiment(c);
    out.push_back(
        SaddleRow{w, lambda, fmse, bound, agg.mean_emse, agg.standard_error, agg.n_trials});
  }
  return out;
}

std::vector<AbovePTRow> above_pt_experiment(const PhasePoint& point,
                                            const std::vector<double>& gammas,
                                            const std::vector<double>& taus,
                                            const ExperimentConfig& config) {
  if (gammas.empty() || taus.empty()) {
    throw std::invalid_argument("above_pt_experiment: empty gamma/tau grid");
  }
  ExperimentConfig base = config;
  base.delta = point.delta;
  base.rho = point.rho;
  base.rho_fraction = -1.0;
  base.nonneg = point.sign_constrained;
  base.validate();
  const double s = base.sigma > 0 ? base.sigma : 1.0;

  std::vector<AbovePTRow> out;
  for (double tau : taus) {
    for (double gamma : gammas) {
      const AbovePTConstruction c = above_pt_construction(point, gamma, tau);
      const DiscretePrior prior =
          DiscretePrior::three_point(point.epsilon(), c.mu * s, point.sign_constrained);
      ExperimentConfig ec = base;
      ec.prior_spec.kind = PriorSpec::Kind::Explicit;
      ec.prior_spec.atoms = prior.atoms;
      ec.prior_spec.weights = prior.weights;
      ec.lambda_policy.kind = LambdaPolicy::Kind::Explicit;
      ec.lambda_policy.values = {c.lambda * s};
      const AggregateReport agg = run_experiment(ec);
      out.push_back(AbovePTRow{gamma, tau, c.mu * s, c.lambda * s, c.fmse * s * s,
                               agg.mean_emse, agg.standard_error, agg.n_trials});
    }
  }
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(header[i]);
  }
  out << "\r\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(row[i]);
    }
    out << "\r\n";
  }
}

void write_manifest(const std::string& csv_path, const nlohmann::json& config_json,
                    std::uint64_t seed) {
  nlohmann::json doc;
  doc["config"] = config_json;
  doc["git_revision"] = git_revision();
  doc["seed"] = seed;
  doc["versions"] = {{"amplab", "1.0.0"},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                   std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)},
                     {"compiler", __VERSION__}};
  std::ofstream out(csv_path + ".manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot open manifest for: " + csv_path);
  out << doc.dump(2) << "\n";
}

std::string git_revision() { return AMPLAB_GIT_REVISION; }

int worker_count() {
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (const char* env = std::getenv("AMPLAB_WORKERS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) workers = std::min(workers, cap);
  }
  return workers;
}

std::uint64_t effective_seed(std::uint64_t config_seed) {
  if (const char* env = std::getenv("AMPLAB_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return config_seed;
}

void parallel_for_trials(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace amplab
