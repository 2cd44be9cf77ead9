// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.
// Runtime limits are part of each criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "irgpucb/confidence.hpp"
#include "irgpucb/export.hpp"
#include "irgpucb/gp.hpp"
#include "irgpucb/harness.hpp"
#include "irgpucb/validate.hpp"

using namespace irgpucb;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double time_limit_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

bool all_passed(const std::vector<CheckReport>& reports, std::string& detail) {
    bool ok = true;
    for (const auto& r : reports) {
        if (!r.passed) {
            ok = false;
            detail += " [" + r.name + " failed: " + fmt("%.6g", r.statistic) + " vs " + fmt("%.6g", r.threshold) + "]";
        }
    }
    return ok;
}

Outcome posterior_oracle() {
    Stream s(2024);
    double worst = 0.0;
    for (int inst = 0; inst < 100; ++inst) {
        const int t = 1 + static_cast<int>(s.below(30));
        const int d = 1 + static_cast<int>(s.below(3));
        std::vector<double> ls;
        for (int j = 0; j < d; ++j) ls.push_back(0.1 + s.uniform());
        KernelSpec k = KernelSpec::squared_exponential(ls);
        if (inst % 4 == 3) k.family = KernelFamily::Matern52;
        const double noise = inst % 2 ? 1e-4 : 1e-2;
        Points X(t, d), Q(20, d);
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < d; ++j) X(i, j) = s.uniform();
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < d; ++j) Q(i, j) = s.uniform();
        Eigen::VectorXd y(t);
        for (int i = 0; i < t; ++i) y[i] = s.normal();

        const auto pred = fit_posterior(k, X, y, noise).predict(Q);
        Eigen::MatrixXd A = gram_matrix(k, X);
        A.diagonal().array() += noise;
        const Eigen::MatrixXd Ainv = A.inverse();
        const Eigen::MatrixXd Kq = cross_covariance(k, Q, X);
        const Eigen::VectorXd mean = Kq * Ainv * y;
        const Eigen::VectorXd var =
            (k.output_scale - (Kq * Ainv).cwiseProduct(Kq).rowwise().sum().array()).max(0.0);
        worst = std::max({worst, (mean - pred.mean).cwiseAbs().maxCoeff(), (var - pred.variance).cwiseAbs().maxCoeff()});
    }
    return {worst <= 1e-8, "max abs error " + fmt("%.3g", worst) + " over 100 instances (t<=30, d<=3)"};
}

Outcome samplers() {
    const auto reports = check_samplers(7);
    std::string detail;
    const bool ok = all_passed(reports, detail);
    std::ostringstream out;
    out << "mean " << fmt("%.5f", reports[0].statistic) << " (target 14.4292 +- 0.008), KS p "
        << fmt("%.3g", reports[1].statistic) << ", Gamma/TN/2pExp MGF within 4 SE" << detail;
    // Also hold the mean to a fixed absolute tolerance.
    const bool mean_ok = std::abs(reports[0].statistic - 14.4292) <= 0.008;
    return {ok && mean_ok, out.str()};
}

Outcome mgf_condition() {
    std::vector<CheckReport> reports;
    double worst = -1.0;
    for (std::uint64_t n : {10ULL, 1000ULL})
        for (double theta : {0.5, 1.0, 2.0}) {
            reports.push_back(check_mgf_condition(n, theta, 1000));
            worst = std::max(worst, reports.back().statistic);
        }
    std::string detail;
    const bool ok = all_passed(reports, detail);
    return {ok, "6 (|X|, theta) settings x 1000 iterations, worst relative excess " + fmt("%.3g", worst) + detail};
}

Points grid_2d() { return CandidateSet::regular_grid(2, 10, 0.0, 0.9).points; }
KernelSpec kernel_2d() { return KernelSpec::isotropic(KernelFamily::SquaredExponential, 0.2, 2); }

Outcome coverage() {
    const auto r = check_ucb_coverage(kernel_2d(), grid_2d(), 5, 0.1, 2000, 11);
    return {r.passed && r.statistic <= 0.120,
            "violation frequency " + fmt("%.4f", r.statistic) + " <= " + fmt("%.4f", r.threshold) +
                " (|X|=100, delta=0.1, 2000 draws)"};
}

Outcome max_bound() {
    std::vector<CheckReport> reports;
    std::string margins;
    for (int n_obs : {0, 5, 20}) {
        reports.push_back(check_max_bound(kernel_2d(), grid_2d(), n_obs, 2000, 12));
        margins += " n_obs=" + std::to_string(n_obs) + ": " + fmt("%+.3f", reports.back().statistic) + " (3SE " +
                   fmt("%.3f", 3 * reports.back().std_error) + ")";
    }
    std::string detail;
    const bool ok = all_passed(reports, detail);
    return {ok, "mean(max UCB) - mean(max f):" + margins + detail};
}

// Shared with criteria 6, 8 and 10.
ExperimentConfig synthetic_config() {
    ExperimentConfig c;
    c.name = "acceptance_synthetic";
    c.objective = ObjectiveKind::GpSample;
    c.dim = 3;
    c.grid_points = 10;
    c.grid_lower = 0.0;
    c.grid_upper = 0.9;
    c.n_functions = 10;
    c.kernel = KernelSpec::isotropic(KernelFamily::SquaredExponential, 0.1, 3);
    c.noise_variance = 1e-4;
    c.horizon = 100;
    c.n_trials = 100;
    c.initial_design = 1;
    c.base_seed = 0;
    c.policies = {"gp_ucb", "irgp_ucb"};
    return c;
}

const ExperimentReport& synthetic_report() {
    static const ExperimentReport report = run_experiment(synthetic_config());
    return report;
}

Outcome info_gain() {
    // Traces from the regret experiment plus every other policy and a run without an initial design.
    std::vector<RegretTrace> traces;
    for (const auto& p : synthetic_report().policies)
        for (const auto& t : p.traces) traces.push_back(t);
    auto extra = synthetic_config();
    extra.policies = {"rgp_ucb", "ucb:fixed_heuristic", "ucb:trunc_normal", "ei", "ts"};
    extra.n_trials = 5;
    extra.horizon = 50;
    for (const auto& p : run_experiment(extra).policies)
        for (const auto& t : p.traces) traces.push_back(t);
    extra.initial_design = 0;
    extra.policies = {"irgp_ucb", "ts"};
    for (const auto& p : run_experiment(extra).policies)
        for (const auto& t : p.traces) traces.push_back(t);

    const double c1 = info_gain_constant(1e-4);
    int failures = 0, checked = 0;
    double tightest = -1e300;
    for (const auto& t : traces) {
        if (!t.complete || !t.kernel_fixed) continue;
        const auto r = check_info_gain_bound(t, t.kernel, t.noise_variance);
        ++checked;
        failures += r.passed ? 0 : 1;
        tightest = std::max(tightest, r.statistic / r.threshold);
    }
    const bool ok = failures == 0 && checked == static_cast<int>(traces.size()) && std::abs(c1 - 0.21715) < 1e-5;
    return {ok, std::to_string(checked) + " traces, " + std::to_string(failures) + " failures, C1 = " +
                    fmt("%.5f", c1) + ", largest sum/bound ratio " + fmt("%.4f", tightest)};
}

Outcome schedule_magnitudes() {
    const auto d = DomainInfo::finite(1000);
    const double b1 = beta_gpucb(d, 1).value;
    const double b500 = beta_gpucb(d, 500).value;
    ConfidenceSchedule e;
    e.kind = ScheduleKind::TwoParamExpFinite;
    e.domain = d;
    ConfidenceSchedule g;
    g.kind = ScheduleKind::Gamma;
    g.domain = d;
    g.theta = 1.0;
    bool constant = true;
    for (int t = 1; t <= 500; ++t) constant = constant && expected_zeta(e, t) == expected_zeta(e, 1);
    const double m = expected_zeta(e, 1);
    const double k1 = gamma_kappa(1000, 1, 1.0);
    const bool gamma_mean = std::abs(expected_zeta(g, 7) - gamma_kappa(1000, 7, 1.0) * 1.0) < 1e-12;
    const bool ok = std::abs(b1 - 11.978) <= 1e-3 && std::abs(b500 - 36.836) <= 1e-3 && std::abs(m - 14.429) <= 1e-3 &&
                    std::abs(k1 - 17.036) <= 1e-3 && constant && gamma_mean;
    return {ok, "beta_1 " + fmt("%.3f", b1) + ", beta_500 " + fmt("%.3f", b500) + ", IRGP-UCB mean " + fmt("%.3f", m) +
                    (constant ? " (constant)" : " (NOT constant)") + ", kappa_1 " + fmt("%.3f", k1)};
}

Outcome regret_ordering() {
    const auto& rep = synthetic_report();
    const PolicyReport* gp = nullptr;
    const PolicyReport* irgp = nullptr;
    for (const auto& p : rep.policies) {
        if (p.policy == "ucb:deterministic_finite") gp = &p;
        if (p.policy == "ucb:two_param_exp_finite") irgp = &p;
    }
    if (!gp || !irgp) return {false, "missing policy report"};
    bool logs = true;
    for (const auto* p : {gp, irgp})
        for (const auto& t : p->traces)
            for (const auto& r : t.rows) logs = logs && r.zeta.has_value();
    // Both traces and the confidence logs are emitted.
    std::ostringstream a, b;
    write_trace_csv(a, irgp->traces);
    write_aggregate_csv(b, irgp->aggregate);
    const bool emitted = a.str().size() > 1000 && b.str().size() > 100;
    const auto& ga = gp->aggregate.back();
    const auto& ia = irgp->aggregate.back();
    const bool ok = irgp->completed >= 30 && gp->completed >= 30 && ia.mean_sr <= ga.mean_sr && logs && emitted;
    return {ok, "T=100, " + std::to_string(irgp->completed) + " trials: IRGP-UCB final mean simple regret " +
                    fmt("%.4f", ia.mean_sr) + " +- " + fmt("%.4f", ia.stderr_sr) + " vs GP-UCB " +
                    fmt("%.4f", ga.mean_sr) + " +- " + fmt("%.4f", ga.stderr_sr)};
}

Outcome tail_bounds() {
    std::vector<double> c;
    for (int i = 0; i < 100; ++i) c.push_back(0.01 + (5.0 - 0.01) * i / 99.0);
    std::vector<TailPair> pairs;
    for (double m : {0.0, -0.5, -1.0})
        for (double s : {0.5, 1.0, 2.0}) pairs.push_back({m, s});
    const auto r = check_tail_bounds(c, pairs, 1000000, 13);
    return {r.passed, "100 c values and 9 (m, s) pairs at 1e6 draws: " + r.detail};
}

Outcome determinism() {
    auto cfg = synthetic_config();
    cfg.horizon = 30;
    cfg.n_trials = 4;
    cfg.policies = {"irgp_ucb", "rgp_ucb", "ei", "ts"};
    auto csv_of = [](const ExperimentReport& r) {
        std::ostringstream out;
        for (const auto& p : r.policies) {
            write_trace_csv(out, p.traces);
            write_aggregate_csv(out, p.aggregate);
        }
        return out.str();
    };
    auto serial = cfg;
    serial.threads = 1;
    auto parallel = cfg;
    parallel.threads = 3;
    const auto a = csv_of(run_experiment(serial));
    const auto b = csv_of(run_experiment(parallel));
    const auto c = csv_of(run_experiment(serial));

    std::ostringstream t1, t2;
    write_trace_csv(t1, {run_trial(cfg, "ts", 2)});
    write_trace_csv(t2, {run_trial(cfg, "ts", 2)});

    std::ostringstream v1, v2;
    for (const auto* suite : {"coverage", "maxbound", "mgf", "tails"}) {
        write_reports_csv(v1, run_suite(suite, 5));
        write_reports_csv(v2, run_suite(suite, 5));
    }
    const bool ok = a == b && a == c && t1.str() == t2.str() && v1.str() == v2.str();
    return {ok, "experiment CSVs (" + std::to_string(a.size()) + " bytes) identical across reruns and thread counts; "
                "trial and validation CSVs identical on rerun"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "posterior oracle equivalence", 10, posterior_oracle},
        {2, "sampler suite", 30, samplers},
        {3, "MGF condition", 1, mgf_condition},
        {4, "UCB coverage", 120, coverage},
        {5, "max bound", 180, max_bound},
        {6, "information-gain bound", 600, info_gain},
        {7, "schedule magnitudes", 1, schedule_magnitudes},
        {8, "regret ordering", 600, regret_ordering},
        {9, "tail bounds", 30, tail_bounds},
        {10, "determinism", 300, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.time_limit_s;
        const bool pass = o.passed && in_time;
        failed += pass ? 0 : 1;
        std::printf("[%s] criterion %2d %-30s %8.2fs  %s%s\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                    o.detail.c_str(), in_time ? "" : fmt(" (exceeded %.0fs limit)", c.time_limit_s).c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
