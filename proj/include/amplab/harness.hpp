#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "amplab/minimax.hpp"
#include "amplab/prior.hpp"

namespace amplab {

enum class SolverKind { Lasso, Ampt, Both };

struct PriorSpec {
  enum class Kind { ThreePoint, FivePointMixture, Explicit };
  Kind kind = Kind::ThreePoint;
  double alpha = 0.02;                  // three_point amplitude discount
  double gamma = 0.5;                   // five_point mixture weight
  double alpha1 = 0.02;
  double alpha2 = 0.50;
  std::vector<double> atoms, weights;   // explicit measure, absolute units
};

struct LambdaPolicy {
  enum class Kind { Maximin, Explicit, TauCalibrated };
  Kind kind = Kind::Maximin;
  std::vector<double> values;  // explicit penalties
  double tau = 0.0;            // AMPT tuning to calibrate from
};

struct ExperimentConfig {
  double delta = 0.25;
  double rho = -1.0;           // exactly one of rho / rho_fraction is set
  double rho_fraction = -1.0;  // fraction of rho_MSE(delta); > 1 above PT
  double sigma = 1.0;
  double alpha = 0.02;
  int N = 1000;
  int replications = 50;
  std::uint64_t seed = 1;
  SolverKind solver = SolverKind::Lasso;
  LambdaPolicy lambda_policy;
  PriorSpec prior_spec;
  bool nonneg = false;

  void validate() const;
  double resolved_rho() const;
};

/// Strict parse: unknown keys anywhere in the document are rejected.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& config);

struct TrialResult {
  std::uint64_t seed = 0;
  double empirical_mse = 0.0;
  int support_size = 0;
  int solver_iterations = 0;
  std::map<std::string, double> observables;
  bool failed = false;
  std::string error;
};

struct AggregateReport {
  double mean_emse;
  double standard_error;
  double fmse_prediction;
  int n_trials;
  double z_score;
  bool escalation_hint = false;  // near-PT |z| > 3: suggest larger N and R
};

/// Instantiated experiment: the prior, penalty and prediction that the config
/// resolves to (all at the config's sigma).
struct ResolvedExperiment {
  DiscretePrior prior;
  double lambda;
  double tau;
  double fmse;
  double rho;
};

ResolvedExperiment resolve_experiment(const ExperimentConfig& config);

AggregateReport aggregate_trials(const std::vector<TrialResult>& trials, double fmse);

AggregateReport run_experiment(const ExperimentConfig& config,
                               std::vector<TrialResult>* trials_out = nullptr);

std::vector<AggregateReport> finite_n_sweep(const ExperimentConfig& config,
                                            const std::vector<int>& Ns);

enum class ContourQuantity { MStar, MuStar, LambdaStar, TauStar };

struct GridSpec {
  int nx = 64;  // delta cells
  int ny = 64;  // rho cells
};

/// CSV grid of a minimax quantity over the open unit square (cell centers);
/// cells above the phase boundary emit "inf".
void emit_contour_grid(ContourQuantity quantity, const GridSpec& grid, double alpha,
                       bool nonneg, const std::string& out_path);

enum class SaddleMode { VaryLambda, VaryMu, Mixture };

struct SaddleRow {
  double control;  // lambda, mu, or mixture weight
  double lambda;
  double fmse;
  double bound;    // quasi-affinity bound (mixture mode only, else nan)
  double emse;
  double se;
  int n_trials;
};

std::vector<SaddleRow> saddle_scan(const PhasePoint& point, SaddleMode mode,
                                   const ExperimentConfig& config,
                                   const std::vector<double>& controls = {});

struct AbovePTRow {
  double gamma;
  double tau;
  double mu;
  double lambda;
  double fmse;
  double emse;
  double se;
  int n_trials;
};

std::vector<AbovePTRow> above_pt_experiment(const PhasePoint& point,
                                            const std::vector<double>& gammas,
                                            const std::vector<double>& taus,
                                            const ExperimentConfig& config);

// --- CSV / manifest plumbing ---

/// 10 significant digits, "inf"/"-inf"/"nan" literals.
std::string format_double(double v);

/// RFC-4180 field quoting.
std::string csv_escape(const std::string& field);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// JSON run manifest (config, git revision, seed, versions) beside a CSV.
void write_manifest(const std::string& csv_path, const nlohmann::json& config_json,
                    std::uint64_t seed);

std::string git_revision();

/// Worker count: hardware concurrency capped by AMPLAB_WORKERS.
int worker_count();

/// Master seed after the AMPLAB_SEED environment override.
std::uint64_t effective_seed(std::uint64_t config_seed);

/// Runs fn(trial_index) for 0..count-1 on the worker pool; results must be
/// written into per-index slots so aggregation stays order-independent.
void parallel_for_trials(int count, const std::function<void(int)>& fn);

}  // namespace amplab
