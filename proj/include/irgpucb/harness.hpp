#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "irgpucb/acquisition.hpp"
#include "irgpucb/objective.hpp"

namespace irgpucb {

enum class ObjectiveKind { GpSample, Benchmark, Tabular };

struct ExperimentConfig {
    std::string name = "experiment";

    ObjectiveKind objective = ObjectiveKind::GpSample;
    // GP sample paths: regular grid with grid_points per dimension on [grid_lower, grid_upper].
    int dim = 3;
    int grid_points = 10;
    double grid_lower = 0.0;
    double grid_upper = 0.9;
    /// Number of distinct sample paths; trial i uses function i % n_functions. 0 means one per trial.
    int n_functions = 0;
    // Benchmarks.
    Benchmark benchmark = Benchmark::HolderTable;
    Eigen::Index pool_size = 1024;
    // Tabular.
    std::string tabular_path;
    bool normalize = true;

    KernelSpec kernel = KernelSpec::isotropic(KernelFamily::SquaredExponential, 0.1, 3);
    /// Iterations between hyperparameter refits; 0 keeps the kernel fixed.
    int fit_every = 0;
    int hyper_budget = 150;

    /// Policy names: "ucb:<schedule>", "ei", "ts", or the aliases gp_ucb, rgp_ucb, irgp_ucb.
    std::vector<std::string> policies{"ucb:two_param_exp_finite"};
    double theta = 1.0;
    double eta = 1.0;
    double heuristic_c = 0.2;
    /// Continuous-domain constants for the continuous schedules.
    double domain_a = 1.0;
    double domain_b = 1.0;
    double domain_r = 1.0;

    /// Observation noise; 0 gives exact observations (the surrogate then uses kMinModelNoise).
    double noise_variance = 1e-4;
    int horizon = 100;
    int n_trials = 10;
    std::uint64_t base_seed = 0;
    int initial_design = 1;
    std::string output_dir = "out";
    /// Worker threads for run_experiment; 0 uses the hardware concurrency.
    int threads = 0;

    /// Throws InputError on any inconsistency.
    void validate() const;
    nlohmann::json to_json() const;
    /// Rejects unknown keys.
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load(const std::filesystem::path& path);
    /// FNV-1a of the canonical JSON dump, as 16 hex digits.
    std::string hash() const;
};

/// Smallest noise variance the surrogate model assumes.
inline constexpr double kMinModelNoise = 1e-8;
inline double model_noise_variance(double observation_noise) { return std::max(observation_noise, kMinModelNoise); }

/// Resolves a policy name against the objective (domain size, dimension) and config constants.
Policy make_policy(const std::string& name, const ExperimentConfig& config, const Objective& objective);

/// Objective used by trial `trial_index`; depends only on (base_seed, function index).
Objective make_objective(const ExperimentConfig& config, int trial_index);

struct TraceRow {
    int iter = 0;
    Eigen::Index candidate = -1;
    Eigen::VectorXd x;
    double y = 0.0;
    /// Noise-free value at x.
    double f = 0.0;
    std::optional<double> zeta;
    double simple_regret = 0.0;
    double cumulative_regret = 0.0;
    /// Posterior standard deviation at x before observing it.
    double sigma = 0.0;
};

struct RegretTrace {
    std::string policy;
    int trial = 0;
    std::uint64_t seed = 0;
    std::string config_hash;
    bool complete = true;
    std::string error;
    /// False once hyperparameters were refit during the trial.
    bool kernel_fixed = true;
    KernelSpec kernel;
    /// Noise variance the surrogate used.
    double noise_variance = 0.0;
    std::vector<Eigen::Index> initial_ids;
    std::vector<TraceRow> rows;

    /// Throws ContractError if the regret monotonicity invariants are violated.
    void check_invariants() const;
};

RegretTrace run_trial(const ExperimentConfig& config, const std::string& policy_name, int trial_index);
RegretTrace run_trial(const ExperimentConfig& config, const Policy& policy, const Objective& objective,
                      int trial_index);

struct AggregateRow {
    int iter = 0;
    double mean_sr = 0.0;
    double stderr_sr = 0.0;
    double mean_cr = 0.0;
    /// NaN when the policy logs no confidence parameter.
    double mean_zeta = 0.0;
};

struct PolicyReport {
    std::string policy;
    std::vector<RegretTrace> traces;
    std::vector<AggregateRow> aggregate;
    int completed = 0;
    int failed = 0;
    /// Mean final cumulative regret over completed trials (empirical BCR).
    double bcr_estimate = 0.0;
    /// Mean final simple regret over completed trials (empirical BSR).
    double bsr_estimate = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<PolicyReport> policies;
};

/// Aggregates completed traces of one policy. Only iterations reached by every completed trace are reported.
PolicyReport aggregate(std::string policy, std::vector<RegretTrace> traces);

/// Runs every policy on n_trials trials; trials run concurrently, results are folded in trial order.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Writes the resolved config, per-policy trace and aggregate CSVs and SVG plots into config.output_dir.
/// Returns the written paths.
std::vector<std::filesystem::path> write_report(const ExperimentReport& report);

}  // namespace irgpucb
