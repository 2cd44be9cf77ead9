#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "irgpucb/acquisition.hpp"
#include "irgpucb/confidence.hpp"
#include "irgpucb/harness.hpp"
#include "irgpucb/kernel.hpp"

namespace irgpucb {

/// Outcome of one verification check.
struct CheckReport {
    std::string name;
    bool passed = false;
    double statistic = 0.0;
    double threshold = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    /// Draws skipped because of numerical failures.
    std::uint64_t failures = 0;
    std::string detail;
};

/// Frequency with which a prior draw exceeds mu + sqrt(beta_delta) sigma somewhere on the grid
/// after conditioning on n_obs noisy observations, beta_delta = 2 log(|X| / (2 delta)).
/// Passes iff frequency <= delta + 3 sqrt(delta (1 - delta) / n_mc).
CheckReport check_ucb_coverage(const KernelSpec& kernel, const Points& grid, int n_obs, double delta, int n_mc,
                               std::uint64_t seed, double noise_variance = 1e-4);

/// beta_delta = 2 log(|X| / (2 delta)).
double beta_delta(std::uint64_t domain_size, double delta);

/// Compares E[max f] with E[max mu + sqrt(zeta) sigma] for zeta ~ 2 log(|X|/2) + Exp(1/2).
/// statistic = mean(max UCB) - mean(max f); passes iff statistic >= -3 pooled standard errors.
CheckReport check_max_bound(const KernelSpec& kernel, const Points& grid, int n_obs, int n_mc, std::uint64_t seed,
                            double noise_variance = 1e-4);

/// Exact check of M_t(-1/2) <= 1 / (|X| t^2) for t = 1..t_max, for the Gamma schedule
/// (kappa from gamma_kappa) and the two-parameter exponential with s_t = 2 log(|X| t^2).
/// statistic = worst M_t (|X| t^2) - 1 over both laws.
CheckReport check_mgf_condition(std::uint64_t domain_size, double theta, int t_max);

/// 1/2 log det(I + K / noise_variance) via Cholesky.
double information_gain(const Eigen::MatrixXd& K, double noise_variance);

/// Information gain of the greedy max-variance selection, for T = 1..t_max.
/// Entry T-1 is a lower bound on the maximum information gain gamma_T.
std::vector<double> greedy_mig_curve(const KernelSpec& kernel, const Points& grid, int t_max, double noise_variance);
double greedy_mig(const KernelSpec& kernel, const Points& grid, int T, double noise_variance);

/// 2 / log(1 + 1 / noise_variance).
double info_gain_constant(double noise_variance);

/// sum_t sigma_{t-1}^2(x_t) <= C1 * information_gain(K of the queried points) + 1e-8.
CheckReport check_info_gain_bound(const RegretTrace& trace, const KernelSpec& kernel, double noise_variance);

struct TailPair {
    double m;
    double s;
};

/// 1 - Phi(c) <= exp(-c^2/2) / 2 at every c, and E[(Z)_+] <= s / sqrt(2 pi) exp(-m^2 / (2 s^2)) for
/// Z ~ N(m, s^2), m <= 0, by n_draws Monte Carlo with 4 standard errors of slack.
CheckReport check_tail_bounds(const std::vector<double>& c_grid, const std::vector<TailPair>& pairs,
                              int n_draws, std::uint64_t seed);

struct HorizonResult {
    /// Smallest T meeting the inequality, if one exists within the grid.
    std::optional<int> horizon;
    double gamma_hat = 0.0;
    /// Left-hand side at the returned T (or at |grid| when unsatisfiable).
    double lhs = 0.0;
    double rhs = 0.0;
    std::string note;
};

/// Smallest T with sqrt(C1 C2 gamma_T / T) <= eta (finite domain, C2 = 2 + s), or
/// sqrt(C1 (2 + s_eta) gamma_T / T) <= eta / 2 (continuous domain), with gamma_T
/// estimated by greedy_mig over `grid`. Since the estimate is a lower bound on
/// gamma_T, the returned T is a lower bound on the certified horizon.
HorizonResult bsr_horizon(double eta, const DomainInfo& domain, const KernelSpec& kernel, const Points& grid,
                          double noise_variance);

/// Sampler checks: two-parameter exponential moments and inverse-transform KS test,
/// and MGF agreement for the Gamma and truncated-normal schedules.
std::vector<CheckReport> check_samplers(std::uint64_t seed, int n_draws = 1000000);

/// Named suites: coverage, maxbound, mgf, infogain, tails, samplers, all.
std::vector<CheckReport> run_suite(const std::string& name, std::uint64_t seed);

void print_reports(std::ostream& out, const std::vector<CheckReport>& reports);
void write_reports_csv(std::ostream& out, const std::vector<CheckReport>& reports);

}  // namespace irgpucb
