// amplab: noise-sensitivity phase-transition toolbox for l1-penalized least
// squares. Subcommands cover the scalar minimax risk, state evolution, the
// phase boundary, AMPT/LASSO solvers and the Monte Carlo experiment drivers.
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "amplab/amp.hpp"
#include "amplab/harness.hpp"
#include "amplab/instance.hpp"
#include "amplab/lasso.hpp"
#include "amplab/minimax.hpp"
#include "amplab/scalar_risk.hpp"
#include "amplab/state_evolution.hpp"

using namespace amplab;

namespace {

std::string fd(double v) { return format_double(v); }

DiscretePrior prior_from_json_text(const std::string& text, bool nonneg) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  DiscretePrior prior;
  if (doc.contains("kind") && doc["kind"] == "three_point") {
    prior = DiscretePrior::three_point(doc.at("epsilon").get<double>(),
                                       doc.at("mu").get<double>(), nonneg);
  } else {
    prior.atoms = doc.at("atoms").get<std::vector<double>>();
    prior.weights = doc.at("weights").get<std::vector<double>>();
    prior.sign_constrained = nonneg;
    prior.validate();
  }
  return prior;
}

void emit_rows(const std::string& out_path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows,
               const nlohmann::json& manifest_cfg, std::uint64_t seed) {
  if (out_path.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) std::cout << ',';
      std::cout << header[i];
    }
    std::cout << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) std::cout << ',';
        std::cout << row[i];
      }
      std::cout << '\n';
    }
    return;
  }
  write_csv(out_path, header, rows);
  write_manifest(out_path, manifest_cfg, seed);
}

std::vector<double> parse_grid_spec(const std::string& spec) {
  // "lo:hi:count" inclusive grid
  std::vector<double> out;
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw CLI::ValidationError("grid spec must be lo:hi:count");
  }
  const double lo = std::stod(spec.substr(0, c1));
  const double hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
  const int count = std::stoi(spec.substr(c2 + 1));
  if (count < 1 || !(hi > lo)) throw CLI::ValidationError("bad grid spec");
  for (int i = 0; i < count; ++i) {
    out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noise-sensitivity phase transition of l1-penalized least squares"};
  app.require_subcommand(1);

  // --- scalar-risk ---
  double sr_eps = 0.1;
  bool sr_nonneg = false;
  std::string sr_out;
  auto* sr = app.add_subcommand("scalar-risk", "minimax soft-threshold risk M(eps), tau(eps)");
  sr->add_option("--epsilon", sr_eps, "sparsity level in (0,1)")->required();
  sr->add_flag("--nonneg", sr_nonneg, "positivity-constrained variant");
  sr->add_option("--out", sr_out, "CSV output path (stdout if omitted)");
  sr->callback([&] {
    const auto res = minimax_scalar(sr_eps, sr_nonneg);
    emit_rows(sr_out, {"epsilon", "minimax_mse", "minimax_tau", "nonneg"},
              {{fd(res.epsilon), fd(res.minimax_mse), fd(res.minimax_tau),
                sr_nonneg ? "1" : "0"}},
              {{"command", "scalar-risk"}, {"epsilon", sr_eps}, {"nonneg", sr_nonneg}}, 0);
  });

  // --- phase-boundary ---
  double pb_delta = 0.25;
  bool pb_parametric = false, pb_nonneg = false;
  std::string pb_tau_grid = "0.2:4:40", pb_out;
  auto* pb = app.add_subcommand("phase-boundary", "rho_MSE(delta) or the parametric curve");
  auto* pb_delta_opt = pb->add_option("--delta", pb_delta, "undersampling in (0,1)");
  pb->add_flag("--parametric", pb_parametric, "sweep the closed-form parametric curve");
  pb->add_option("--tau-grid", pb_tau_grid, "lo:hi:count tau grid for --parametric");
  pb->add_flag("--nonneg", pb_nonneg, "positivity-constrained boundary");
  pb->add_option("--out", pb_out, "CSV output path");
  pb->callback([&] {
    if (pb_parametric) {
      std::vector<std::vector<std::string>> rows;
      for (double tau : parse_grid_spec(pb_tau_grid)) {
        const auto bp = phase_boundary_parametric(tau);
        rows.push_back({fd(tau), fd(bp.delta), fd(bp.rho)});
      }
      emit_rows(pb_out, {"tau", "delta", "rho"}, rows,
                {{"command", "phase-boundary"}, {"parametric", true}, {"tau_grid", pb_tau_grid}},
                0);
      return;
    }
    if (pb_delta_opt->count() == 0) {
      throw CLI::ValidationError("phase-boundary needs --delta or --parametric");
    }
    emit_rows(pb_out, {"delta", "rho_mse", "nonneg"},
              {{fd(pb_delta), fd(phase_boundary(pb_delta, pb_nonneg)), pb_nonneg ? "1" : "0"}},
              {{"command", "phase-boundary"}, {"delta", pb_delta}, {"nonneg", pb_nonneg}}, 0);
  });

  // --- se ---
  double se_delta = 0.25, se_sigma = 1.0, se_tau = 1.5;
  std::string se_prior, se_out;
  bool se_nonneg = false;
  auto* se = app.add_subcommand("se", "state evolution to the highest fixed point");
  se->add_option("--delta", se_delta)->required();
  se->add_option("--sigma", se_sigma)->required();
  se->add_option("--tau", se_tau)->required();
  se->add_option("--prior", se_prior,
                 "JSON: {\"kind\":\"three_point\",\"epsilon\":..,\"mu\":..} or "
                 "{\"atoms\":[..],\"weights\":[..]}")
      ->required();
  se->add_flag("--nonneg", se_nonneg);
  se->add_option("--out", se_out);
  se->callback([&] {
    const SEParams params{se_delta, se_sigma, se_tau,
                          prior_from_json_text(se_prior, se_nonneg)};
    const SEFixedPoint fp = find_hfp(params);
    const EquilibriumReport eq = equilibrium_report(params, fp);
    emit_rows(se_out,
              {"eq_mse", "stability", "iterations", "npi", "theta", "eq_msr", "eq_mae",
               "eq_dr", "eq_pmsr"},
              {{fd(eq.eq_mse), fd(fp.stability), std::to_string(fp.iterations), fd(eq.npi),
                fd(eq.theta), fd(eq.eq_msr), fd(eq.eq_mae), fd(eq.eq_dr), fd(eq.eq_pmsr)}},
              {{"command", "se"},
               {"delta", se_delta},
               {"sigma", se_sigma},
               {"tau", se_tau},
               {"prior", se_prior},
               {"nonneg", se_nonneg}},
              0);
  });

  // --- minimax ---
  double mx_delta = 0.25, mx_rho = 0.13, mx_alpha = 0.02;
  bool mx_nonneg = false;
  std::string mx_out;
  auto* mx = app.add_subcommand("minimax", "per-phase-point minimax report");
  mx->add_option("--delta", mx_delta)->required();
  mx->add_option("--rho", mx_rho)->required();
  mx->add_option("--alpha", mx_alpha);
  mx->add_flag("--nonneg", mx_nonneg);
  mx->add_option("--out", mx_out);
  mx->callback([&] {
    const PhasePointReport rep = noise_sensitivity({mx_delta, mx_rho, mx_nonneg}, mx_alpha);
    emit_rows(mx_out,
              {"delta", "rho", "epsilon", "below_pt", "m_star", "tau_star", "npi_star",
               "mu_star", "lambda_star"},
              {{fd(mx_delta), fd(mx_rho), fd(rep.epsilon), rep.below_pt ? "1" : "0",
                fd(rep.m_star_sensitivity), fd(rep.tau_star), fd(rep.npi_star),
                fd(rep.mu_star), fd(rep.lambda_star)}},
              {{"command", "minimax"},
               {"delta", mx_delta},
               {"rho", mx_rho},
               {"alpha", mx_alpha},
               {"nonneg", mx_nonneg}},
              0);
  });

  // --- calibrate ---
  double cal_delta = 0.25, cal_sigma = 1.0;
  std::optional<double> cal_tau, cal_lambda;
  std::string cal_prior, cal_out;
  bool cal_nonneg = false;
  auto* cal = app.add_subcommand("calibrate", "AMPT(tau) <-> LASSO(lambda) calibration");
  cal->add_option("--delta", cal_delta)->required();
  cal->add_option("--sigma", cal_sigma);
  cal->add_option("--tau", cal_tau, "map tau -> lambda");
  cal->add_option("--lambda", cal_lambda, "map lambda -> tau");
  cal->add_option("--prior", cal_prior)->required();
  cal->add_flag("--nonneg", cal_nonneg);
  cal->add_option("--out", cal_out);
  cal->callback([&] {
    if (cal_tau.has_value() == cal_lambda.has_value()) {
      throw CLI::ValidationError("calibrate needs exactly one of --tau / --lambda");
    }
    const SEParams params{cal_delta, cal_sigma, 1.0,
                          prior_from_json_text(cal_prior, cal_nonneg)};
    double tau, lambda;
    if (cal_tau) {
      tau = *cal_tau;
      lambda = calibrate_tau_to_lambda(tau, params);
    } else {
      lambda = *cal_lambda;
      tau = calibrate_lambda_to_tau(lambda, params);
    }
    emit_rows(cal_out, {"tau", "lambda"}, {{fd(tau), fd(lambda)}},
              {{"command", "calibrate"}, {"delta", cal_delta}, {"sigma", cal_sigma},
               {"prior", cal_prior}},
              0);
  });

  // --- amp run / lasso run ---
  struct SolveArgs {
    double delta = 0.25, rho = 0.13, sigma = 1.0, tau = 1.5, lambda = 1.0;
    int N = 1000;
    std::uint64_t seed = 1;
    std::string prior, out;
    bool nonneg = false;
  } amp_args, lasso_args;

  auto* ampc = app.add_subcommand("amp", "AMPT solver");
  auto* ampr = ampc->add_subcommand("run", "run AMPT(tau) on a synthetic instance");
  ampr->add_option("--delta", amp_args.delta)->required();
  ampr->add_option("--rho", amp_args.rho)->required();
  ampr->add_option("--sigma", amp_args.sigma);
  ampr->add_option("--tau", amp_args.tau)->required();
  ampr->add_option("--N", amp_args.N);
  ampr->add_option("--seed", amp_args.seed);
  ampr->add_option("--prior", amp_args.prior)->required();
  ampr->add_flag("--nonneg", amp_args.nonneg);
  ampr->add_option("--out", amp_args.out);
  ampr->callback([&] {
    const auto& a = amp_args;
    const auto prior = prior_from_json_text(a.prior, a.nonneg);
    const auto inst =
        generate_instance(a.delta, a.rho, a.sigma, prior, a.N, effective_seed(a.seed));
    const AMPResult res =
        amp_iterate(inst, a.tau, amp_default_tolerance(), ResidualScale::RMS, a.nonneg);
    const double mse = (res.state.estimate - inst.x0).squaredNorm() / inst.N;
    emit_rows(a.out,
              {"emse", "iterations", "converged", "df", "sigma_t", "theta_t"},
              {{fd(mse), std::to_string(res.state.iteration), res.converged ? "1" : "0",
                std::to_string(res.state.df), fd(res.state.sigma_t), fd(res.state.theta_t)}},
              {{"command", "amp run"}, {"delta", a.delta}, {"rho", a.rho}, {"sigma", a.sigma},
               {"tau", a.tau}, {"N", a.N}, {"prior", a.prior}, {"nonneg", a.nonneg}},
              effective_seed(a.seed));
  });

  auto* lassoc = app.add_subcommand("lasso", "LASSO coordinate-descent solver");
  auto* lassor = lassoc->add_subcommand("run", "solve one synthetic instance");
  lassor->add_option("--delta", lasso_args.delta)->required();
  lassor->add_option("--rho", lasso_args.rho)->required();
  lassor->add_option("--sigma", lasso_args.sigma);
  lassor->add_option("--lambda", lasso_args.lambda)->required();
  lassor->add_option("--N", lasso_args.N);
  lassor->add_option("--seed", lasso_args.seed);
  lassor->add_option("--prior", lasso_args.prior)->required();
  lassor->add_flag("--nonneg", lasso_args.nonneg);
  lassor->add_option("--out", lasso_args.out);
  lassor->callback([&] {
    const auto& a = lasso_args;
    const auto prior = prior_from_json_text(a.prior, a.nonneg);
    const auto inst =
        generate_instance(a.delta, a.rho, a.sigma, prior, a.N, effective_seed(a.seed));
    const LassoSolution sol = solve_lasso(inst, a.lambda, a.nonneg);
    const double mse = (sol.xhat - inst.x0).squaredNorm() / inst.N;
    const KKTReport kkt = verify_lasso_kkt(inst, sol.xhat, sol.lambda,
                                           1e-6 * (1.0 + sol.lambda), a.nonneg);
    emit_rows(a.out,
              {"emse", "objective", "duality_gap", "sweeps", "support_size", "kkt_pass"},
              {{fd(mse), fd(sol.objective), fd(sol.duality_gap),
                std::to_string(sol.iterations), std::to_string(sol.support_size),
                kkt.pass ? "1" : "0"}},
              {{"command", "lasso run"}, {"delta", a.delta}, {"rho", a.rho},
               {"sigma", a.sigma}, {"lambda", a.lambda}, {"N", a.N}, {"prior", a.prior},
               {"nonneg", a.nonneg}},
              effective_seed(a.seed));
  });

  // --- experiment ---
  std::string exp_config, exp_out, exp_trials_out;
  auto* exp = app.add_subcommand("experiment", "Monte Carlo experiment from a JSON config");
  exp->add_option("--config", exp_config, "JSON config file")->required();
  exp->add_option("--out", exp_out, "summary CSV path");
  exp->add_option("--trials-out", exp_trials_out, "per-trial CSV path");
  exp->callback([&] {
    const ExperimentConfig config = load_experiment_config(exp_config);
    std::vector<TrialResult> trials;
    const AggregateReport rep = run_experiment(config, &trials);
    const auto cfg_json = config_to_json(config);
    const std::uint64_t seed = effective_seed(config.seed);
    emit_rows(exp_out,
              {"mean_emse", "standard_error", "fmse_prediction", "n_trials", "z_score",
               "escalation_hint"},
              {{fd(rep.mean_emse), fd(rep.standard_error), fd(rep.fmse_prediction),
                std::to_string(rep.n_trials), fd(rep.z_score),
                rep.escalation_hint ? "1" : "0"}},
              cfg_json, seed);
    if (!exp_trials_out.empty()) {
      std::vector<std::vector<std::string>> rows;
      for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& t = trials[i];
        rows.push_back({std::to_string(i), std::to_string(t.seed), fd(t.empirical_mse),
                        std::to_string(t.support_size), std::to_string(t.solver_iterations),
                        fd(t.observables.count("DR") ? t.observables.at("DR") : 0.0),
                        fd(t.observables.count("FAR") ? t.observables.at("FAR") : 0.0),
                        fd(t.observables.count("MDR") ? t.observables.at("MDR") : 0.0),
                        fd(t.observables.count("FDeR") ? t.observables.at("FDeR") : 0.0),
                        fd(t.observables.count("FDR") ? t.observables.at("FDR") : 0.0),
                        t.failed ? "1" : "0", t.error});
      }
      emit_rows(exp_trials_out,
                {"trial", "seed", "emse", "support_size", "iterations", "DR", "FAR", "MDR",
                 "FDeR", "FDR", "failed", "error"},
                rows, cfg_json, seed);
    }
  });

  // --- contour ---
  std::string ct_quantity = "M*", ct_grid = "64x64", ct_out;
  double ct_alpha = 0.02;
  bool ct_nonneg = false;
  auto* ct = app.add_subcommand("contour", "delta x rho grid of a minimax quantity");
  ct->add_option("--quantity", ct_quantity, "M*|mu*|lambda*|tau*")->required();
  ct->add_option("--grid", ct_grid, "NXxNY, default 64x64");
  ct->add_option("--alpha", ct_alpha);
  ct->add_flag("--nonneg", ct_nonneg);
  ct->add_option("--out", ct_out, "CSV output path")->required();
  ct->callback([&] {
    ContourQuantity q;
    if (ct_quantity == "M*") q = ContourQuantity::MStar;
    else if (ct_quantity == "mu*") q = ContourQuantity::MuStar;
    else if (ct_quantity == "lambda*") q = ContourQuantity::LambdaStar;
    else if (ct_quantity == "tau*") q = ContourQuantity::TauStar;
    else throw CLI::ValidationError("quantity must be M*|mu*|lambda*|tau*");
    const auto x = ct_grid.find('x');
    if (x == std::string::npos) throw CLI::ValidationError("grid must be NXxNY");
    GridSpec grid;
    grid.nx = std::stoi(ct_grid.substr(0, x));
    grid.ny = std::stoi(ct_grid.substr(x + 1));
    emit_contour_grid(q, grid, ct_alpha, ct_nonneg, ct_out);
    std::cout << "wrote " << grid.nx * grid.ny << " cells to " << ct_out << "\n";
  });

  // --- saddle ---
  std::string sd_mode = "vary_lambda", sd_config, sd_out;
  double sd_delta = 0.25, sd_rho = 0.13;
  std::vector<double> sd_controls;
  auto* sd = app.add_subcommand("saddle", "saddlepoint scans (Tables of the vary protocols)");
  sd->add_option("--mode", sd_mode, "vary_lambda|vary_mu|mixture")->required();
  sd->add_option("--delta", sd_delta)->required();
  sd->add_option("--rho", sd_rho)->required();
  sd->add_option("--config", sd_config, "experiment JSON config for N/R/seed");
  sd->add_option("--controls", sd_controls, "explicit control values");
  sd->add_option("--out", sd_out);
  sd->callback([&] {
    SaddleMode mode;
    if (sd_mode == "vary_lambda") mode = SaddleMode::VaryLambda;
    else if (sd_mode == "vary_mu") mode = SaddleMode::VaryMu;
    else if (sd_mode == "mixture") mode = SaddleMode::Mixture;
    else throw CLI::ValidationError("mode must be vary_lambda|vary_mu|mixture");
    ExperimentConfig config;
    if (!sd_config.empty()) config = load_experiment_config(sd_config);
    config.delta = sd_delta;
    config.rho = sd_rho;
    config.rho_fraction = -1.0;
    const auto rows = saddle_scan({sd_delta, sd_rho, config.nonneg}, mode, config, sd_controls);
    std::vector<std::vector<std::string>> csv;
    for (const auto& r : rows) {
      csv.push_back({fd(r.control), fd(r.lambda), fd(r.fmse), fd(r.bound), fd(r.emse),
                     fd(r.se), std::to_string(r.n_trials)});
    }
    emit_rows(sd_out, {"control", "lambda", "fmse", "bound", "emse", "se", "n_trials"}, csv,
              {{"command", "saddle"}, {"mode", sd_mode}, {"delta", sd_delta}, {"rho", sd_rho},
               {"config", config_to_json(config)}},
              effective_seed(config.seed));
  });

  // --- above-pt ---
  std::string ap_config, ap_out;
  double ap_delta = 0.25, ap_rho = 0.401;
  std::vector<double> ap_gammas{0.75, 0.9, 0.99};
  std::vector<double> ap_taus{1.5};
  auto* ap = app.add_subcommand("above-pt", "constructions and runs above the phase boundary");
  ap->add_option("--delta", ap_delta)->required();
  ap->add_option("--rho", ap_rho)->required();
  ap->add_option("--gammas", ap_gammas);
  ap->add_option("--taus", ap_taus);
  ap->add_option("--config", ap_config, "experiment JSON config for N/R/seed");
  ap->add_option("--out", ap_out);
  ap->callback([&] {
    ExperimentConfig config;
    if (!ap_config.empty()) config = load_experiment_config(ap_config);
    config.delta = ap_delta;
    config.rho = ap_rho;
    config.rho_fraction = -1.0;
    const auto rows = above_pt_experiment({ap_delta, ap_rho, config.nonneg}, ap_gammas,
                                          ap_taus, config);
    std::vector<std::vector<std::string>> csv;
    for (const auto& r : rows) {
      csv.push_back({fd(r.gamma), fd(r.tau), fd(r.mu), fd(r.lambda), fd(r.fmse), fd(r.emse),
                     fd(r.se), std::to_string(r.n_trials)});
    }
    emit_rows(ap_out, {"gamma", "tau", "mu", "lambda", "fmse", "emse", "se", "n_trials"}, csv,
              {{"command", "above-pt"}, {"delta", ap_delta}, {"rho", ap_rho},
               {"config", config_to_json(config)}},
              effective_seed(config.seed));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
