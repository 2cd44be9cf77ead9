// Command-line front end: experiment runner, schedule calculator, verification suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irgpucb/confidence.hpp"
#include "irgpucb/errors.hpp"
#include "irgpucb/harness.hpp"
#include "irgpucb/validate.hpp"

namespace {

using namespace irgpucb;

constexpr int kInputError = 1;
constexpr int kNumericalError = 2;
constexpr int kChecksFailed = 3;

struct DomainArgs {
    std::optional<std::uint64_t> domain_size;
    std::optional<int> dim;
    double a = 1.0;
    double b = 1.0;
    double r = 1.0;

    DomainInfo resolve() const {
        if (domain_size && dim) throw InputError("give either --domain-size or --dim, not both");
        if (domain_size) return DomainInfo::finite(*domain_size);
        if (dim) return DomainInfo::continuous(a, b, r, *dim);
        throw InputError("a domain is required: --domain-size N, or --dim D with --a/--b/--r");
    }
};

void add_domain_options(CLI::App* cmd, DomainArgs& d) {
    cmd->add_option("--domain-size", d.domain_size, "finite domain cardinality |X|");
    cmd->add_option("--dim", d.dim, "continuous domain dimension");
    cmd->add_option("--a", d.a, "derivative tail constant a");
    cmd->add_option("--b", d.b, "derivative tail constant b");
    cmd->add_option("--r", d.r, "box side length r");
}

void print_row(int t, double value, double mean, bool clamped) {
    std::printf("%d\t%.6f\t%.6f%s\n", t, value, mean, clamped ? "\tclamped" : "");
}

int calc_beta(const DomainArgs& d, const std::vector<int>& ts) {
    const auto domain = d.resolve();
    std::printf("t\tbeta\tmean\n");
    for (int t : ts) {
        const auto v = beta_gpucb(domain, t);
        print_row(t, v.value, v.value, v.clamped);
    }
    return 0;
}

int calc_shift(const DomainArgs& d, const std::vector<int>& ts, std::optional<double> eta) {
    const auto domain = d.resolve();
    std::printf("t\ts\tmean\n");
    if (eta) {
        const auto p = irgpucb_params(domain, IrgpucbAccuracy{*eta});
        print_row(0, p.shift, p.shift + 1.0 / p.rate, p.clamped);
        return 0;
    }
    if (domain.is_finite()) {
        const auto p = irgpucb_params(domain, IrgpucbFinite{});
        for (int t : ts) print_row(t, p.shift, p.shift + 1.0 / p.rate, p.clamped);
        return 0;
    }
    for (int t : ts) {
        const auto p = irgpucb_params(domain, IrgpucbAtIteration{t});
        print_row(t, p.shift, p.shift + 1.0 / p.rate, p.clamped);
    }
    return 0;
}

int calc_kappa(const DomainArgs& d, const std::vector<int>& ts, double theta) {
    const auto domain = d.resolve();
    std::printf("t\tkappa\tmean\n");
    for (int t : ts) {
        const double k = gamma_kappa_from_log(log_discretization_size(domain, t), t, theta);
        print_row(t, k, k * theta, false);
    }
    return 0;
}

struct HorizonArgs {
    double eta = 0.5;
    int grid_dim = 3;
    int grid_points = 10;
    double length_scale = 0.1;
    double noise = 1e-4;
};

int calc_horizon(const DomainArgs& d, const HorizonArgs& h) {
    const auto grid = CandidateSet::regular_grid(h.grid_dim, h.grid_points, 0.0, 0.9).points;
    const auto kernel = KernelSpec::isotropic(KernelFamily::SquaredExponential, h.length_scale, h.grid_dim);
    const DomainInfo domain = d.domain_size || d.dim ? d.resolve()
                                                    : DomainInfo::finite(static_cast<std::uint64_t>(grid.rows()));
    const auto res = bsr_horizon(h.eta, domain, kernel, grid, h.noise);
    if (res.horizon)
        std::printf("T\t%d\ngamma_hat\t%.6f\nlhs\t%.6f\nrhs\t%.6f\n", *res.horizon, res.gamma_hat, res.lhs, res.rhs);
    else
        std::printf("T\tunsatisfiable\ngamma_hat\t%.6f\nlhs\t%.6f\nrhs\t%.6f\n", res.gamma_hat, res.lhs, res.rhs);
    std::printf("note\t%s\n", res.note.c_str());
    return 0;
}

int run(const std::string& config_path, std::optional<int> trials, std::optional<std::string> out) {
    auto config = ExperimentConfig::load(config_path);
    if (trials) config.n_trials = *trials;
    if (out) config.output_dir = *out;
    config.validate();
    const auto report = run_experiment(config);
    const auto files = write_report(report);
    bool any_failed = false;
    for (const auto& p : report.policies) {
        std::printf("%-32s completed %d/%d  final mean simple regret %.6g  mean cumulative regret %.6g\n",
                    p.policy.c_str(), p.completed, p.completed + p.failed, p.bsr_estimate, p.bcr_estimate);
        for (const auto& t : p.traces)
            if (!t.complete) std::fprintf(stderr, "%s trial %d incomplete: %s\n", p.policy.c_str(), t.trial,
                                          t.error.c_str());
        any_failed = any_failed || p.failed > 0;
    }
    std::printf("wrote %zu files to %s\n", files.size(), config.output_dir.c_str());
    return any_failed ? kNumericalError : 0;
}

int validate(const std::string& suite, std::uint64_t seed, const std::optional<std::string>& csv) {
    const auto reports = run_suite(suite, seed);
    print_reports(std::cout, reports);
    const std::string path = csv ? *csv : "validate_" + suite + ".csv";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path);
    write_reports_csv(f, reports);
    if (!f) throw IoError("write failed: " + path);
    std::size_t failed = 0;
    for (const auto& r : reports) failed += r.passed ? 0 : 1;
    std::printf("%zu/%zu checks passed; report written to %s\n", reports.size() - failed, reports.size(),
                path.c_str());
    return failed == 0 ? 0 : kChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Randomized GP-UCB Bayesian optimization: experiments, schedules and checks"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "run an experiment from a JSON config");
    std::string config_path;
    std::optional<int> trials;
    std::optional<std::string> out;
    run_cmd->add_option("--config", config_path, "experiment config file")->required();
    run_cmd->add_option("--trials", trials, "override n_trials");
    run_cmd->add_option("--out", out, "override output directory");

    auto* calc_cmd = app.add_subcommand("calc", "confidence schedule calculator");
    calc_cmd->require_subcommand(1);
    DomainArgs domain;
    std::vector<int> ts{1};
    double theta = 1.0;
    std::optional<double> eta;
    HorizonArgs horizon;
    auto* beta_cmd = calc_cmd->add_subcommand("beta", "GP-UCB confidence parameter beta_t");
    auto* s_cmd = calc_cmd->add_subcommand("s", "IRGP-UCB shift s (rate 1/2)");
    auto* kappa_cmd = calc_cmd->add_subcommand("kappa", "Gamma shape kappa_t");
    auto* horizon_cmd = calc_cmd->add_subcommand("horizon", "iterations needed for expected simple regret <= eta");
    for (auto* c : {beta_cmd, s_cmd, kappa_cmd}) {
        add_domain_options(c, domain);
        c->add_option("--t", ts, "iteration(s)")->expected(1, -1);
    }
    s_cmd->add_option("--eta", eta, "required accuracy (continuous shift s_eta)");
    kappa_cmd->add_option("--theta", theta, "Gamma scale");
    add_domain_options(horizon_cmd, domain);
    horizon_cmd->add_option("--eta", horizon.eta, "required accuracy");
    horizon_cmd->add_option("--grid-dim", horizon.grid_dim, "grid dimension");
    horizon_cmd->add_option("--grid-points", horizon.grid_points, "grid points per dimension");
    horizon_cmd->add_option("--length-scale", horizon.length_scale, "SE kernel length scale");
    horizon_cmd->add_option("--noise", horizon.noise, "noise variance");

    auto* val_cmd = app.add_subcommand("validate", "run verification suites");
    std::string suite = "all";
    std::uint64_t seed = 0;
    std::optional<std::string> csv;
    val_cmd->add_option("--suite", suite, "coverage|maxbound|mgf|infogain|tails|samplers|all")
        ->check(CLI::IsMember({"coverage", "maxbound", "mgf", "infogain", "tails", "samplers", "all"}));
    val_cmd->add_option("--seed", seed, "seed");
    val_cmd->add_option("--csv", csv, "CSV report path (default validate_<suite>.csv)");

    auto* version_cmd = app.add_subcommand("version", "print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (*run_cmd) return run(config_path, trials, out);
        if (*beta_cmd) return calc_beta(domain, ts);
        if (*s_cmd) return calc_shift(domain, ts, eta);
        if (*kappa_cmd) return calc_kappa(domain, ts, theta);
        if (*horizon_cmd) return calc_horizon(domain, horizon);
        if (*val_cmd) return validate(suite, seed, csv);
        if (*version_cmd) {
            std::printf("irgpucb %s\n", IRGPUCB_VERSION);
            return 0;
        }
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return kNumericalError;
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInputError;
    } catch (const ContractError& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kNumericalError;
    }
    return kInputError;
}
