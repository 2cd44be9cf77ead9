#include "irgpucb/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "irgpucb/errors.hpp"
#include "irgpucb/export.hpp"
#include "irgpucb/gp.hpp"
#include "irgpucb/stats.hpp"

namespace irgpucb {
namespace {

// Prior factor and the fixed-location conditioning shared by the coverage and max-bound checks.
struct ConditionedPrior {
    Eigen::MatrixXd prior_factor;       // L with L L^T = K + jitter I
    std::vector<Eigen::Index> obs;      // observed grid indices
    Eigen::MatrixXd gain;               // mu = gain * y_obs
    Eigen::VectorXd posterior_sd;       // sigma_{t-1} on the grid
};

ConditionedPrior condition_prior(const KernelSpec& kernel, const Points& grid, int n_obs, double noise_variance,
                                 Stream& stream) {
    const Eigen::Index m = grid.rows();
    if (m < 1) throw InputError("check needs a non-empty grid");
    if (n_obs < 0) throw InputError("n_obs must be >= 0");
    ConditionedPrior c;
    const Eigen::MatrixXd K = gram_matrix(kernel, grid);
    c.prior_factor = jittered_cholesky(K, kPriorJitter).llt.matrixL();

    // Distinct random locations while possible, then with replacement.
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < n_obs; ++i) {
        if (i < m) {
            const auto j = i + static_cast<Eigen::Index>(stream.below(static_cast<std::uint64_t>(m - i)));
            std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
            c.obs.push_back(perm[static_cast<std::size_t>(i)]);
        } else {
            c.obs.push_back(static_cast<Eigen::Index>(stream.below(static_cast<std::uint64_t>(m))));
        }
    }

    const auto n = static_cast<Eigen::Index>(c.obs.size());
    if (n == 0) {
        c.gain = Eigen::MatrixXd::Zero(m, 0);
        c.posterior_sd = K.diagonal().cwiseSqrt();
        return c;
    }
    Eigen::MatrixXd Koo(n, n), Kgo(m, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        Kgo.col(j) = K.col(c.obs[static_cast<std::size_t>(j)]);
        for (Eigen::Index i = 0; i < n; ++i) Koo(i, j) = K(c.obs[static_cast<std::size_t>(i)], c.obs[static_cast<std::size_t>(j)]);
    }
    Koo.diagonal().array() += noise_variance;
    const auto f = jittered_cholesky(Koo, 0.0);
    c.gain = f.llt.solve(Kgo.transpose()).transpose();
    const Eigen::VectorXd reduction = (c.gain.array() * Kgo.array()).rowwise().sum();
    c.posterior_sd = (K.diagonal() - reduction).cwiseMax(0.0).cwiseSqrt();
    return c;
}

Eigen::VectorXd draw_prior(const ConditionedPrior& c, Stream& stream) {
    Eigen::VectorXd z(c.prior_factor.rows());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = stream.normal();
    return c.prior_factor.triangularView<Eigen::Lower>() * z;
}

Eigen::VectorXd posterior_mean(const ConditionedPrior& c, const Eigen::VectorXd& f, double noise_sd, Stream& stream) {
    if (c.obs.empty()) return Eigen::VectorXd::Zero(f.size());
    Eigen::VectorXd y(static_cast<Eigen::Index>(c.obs.size()));
    for (std::size_t i = 0; i < c.obs.size(); ++i) y[static_cast<Eigen::Index>(i)] = f[c.obs[i]] + noise_sd * stream.normal();
    return c.gain * y;
}

std::string fmtg(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

double beta_delta(std::uint64_t domain_size, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
    return 2.0 * std::log(static_cast<double>(domain_size) / (2.0 * delta));
}

CheckReport check_ucb_coverage(const KernelSpec& kernel, const Points& grid, int n_obs, double delta, int n_mc,
                               std::uint64_t seed, double noise_variance) {
    if (n_mc < 1) throw InputError("n_mc must be >= 1");
    CheckReport r;
    r.name = "coverage(n_obs=" + std::to_string(n_obs) + ")";
    r.seed = seed;
    Stream root = Stream(seed).split("coverage").split(static_cast<std::uint64_t>(n_obs));
    Stream setup = root.split("setup");
    Stream draws = root.split("draws");
    const auto cp = condition_prior(kernel, grid, n_obs, noise_variance, setup);
    const double root_beta = std::sqrt(std::max(0.0, beta_delta(static_cast<std::uint64_t>(grid.rows()), delta)));
    const double noise_sd = std::sqrt(noise_variance);

    std::uint64_t violations = 0;
    for (int k = 0; k < n_mc; ++k) {
        const Eigen::VectorXd f = draw_prior(cp, draws);
        const Eigen::VectorXd mu = posterior_mean(cp, f, noise_sd, draws);
        const bool covered = ((f - mu).array() <= root_beta * cp.posterior_sd.array()).all();
        if (!covered) ++violations;
    }
    const double n = static_cast<double>(n_mc);
    const double freq = static_cast<double>(violations) / n;
    r.statistic = freq;
    r.threshold = delta + 3.0 * std::sqrt(delta * (1.0 - delta) / n);
    r.std_error = std::sqrt(freq * (1.0 - freq) / n);
    r.samples = static_cast<std::uint64_t>(n_mc);
    r.passed = freq <= r.threshold;
    r.detail = "violation frequency over |X|=" + std::to_string(grid.rows()) + ", delta=" + fmtg(delta) +
               ", beta_delta=" + fmtg(root_beta * root_beta);
    return r;
}

CheckReport check_max_bound(const KernelSpec& kernel, const Points& grid, int n_obs, int n_mc, std::uint64_t seed,
                            double noise_variance) {
    if (n_mc < 2) throw InputError("n_mc must be >= 2");
    if (grid.rows() < 3) throw InputError("max-bound check needs |X| >= 3");
    CheckReport r;
    r.name = "maxbound(n_obs=" + std::to_string(n_obs) + ")";
    r.seed = seed;
    Stream root = Stream(seed).split("maxbound").split(static_cast<std::uint64_t>(n_obs));
    Stream setup = root.split("setup");
    Stream draws = root.split("draws");
    const auto cp = condition_prior(kernel, grid, n_obs, noise_variance, setup);
    const auto params = irgpucb_params(DomainInfo::finite(static_cast<std::uint64_t>(grid.rows())), IrgpucbFinite{});
    const ShiftedExponential law{params.shift, params.rate};
    const double noise_sd = std::sqrt(noise_variance);

    RunningStats max_f, max_ucb;
    for (int k = 0; k < n_mc; ++k) {
        const Eigen::VectorXd f = draw_prior(cp, draws);
        max_f.push(f.maxCoeff());
        const Eigen::VectorXd mu = posterior_mean(cp, f, noise_sd, draws);
        const double zeta = sample(law, draws);
        max_ucb.push((mu + std::sqrt(zeta) * cp.posterior_sd).maxCoeff());
    }
    r.statistic = max_ucb.mean() - max_f.mean();
    r.std_error = std::sqrt(max_ucb.variance() / n_mc + max_f.variance() / n_mc);
    r.threshold = -3.0 * r.std_error;
    r.samples = static_cast<std::uint64_t>(n_mc);
    r.passed = r.statistic >= r.threshold;
    r.detail = "mean max UCB " + fmtg(max_ucb.mean()) + " vs mean max f " + fmtg(max_f.mean()) + ", s=" +
               fmtg(params.shift);
    return r;
}

CheckReport check_mgf_condition(std::uint64_t domain_size, double theta, int t_max) {
    if (!(theta > 0.0)) throw InputError("theta must be positive");
    if (domain_size < 1) throw InputError("domain size must be >= 1");
    if (t_max < 1) throw InputError("t_max must be >= 1");
    CheckReport r;
    r.name = "mgf(|X|=" + std::to_string(domain_size) + ",theta=" + fmtg(theta) + ")";
    r.threshold = 1e-12;
    double worst = -std::numeric_limits<double>::infinity();
    double worst_gamma = worst;
    const double n = static_cast<double>(domain_size);
    for (int t = 1; t <= t_max; ++t) {
        const double tt = static_cast<double>(t);
        const double scaled_bound = n * tt * tt;
        const GammaLaw gamma{gamma_kappa(n, t, theta), theta};
        const ShiftedExponential shifted{2.0 * std::log(scaled_bound), 0.5};
        const double g = mgf_at_minus_half(gamma) * scaled_bound - 1.0;
        const double e = mgf_at_minus_half(shifted) * scaled_bound - 1.0;
        worst_gamma = std::max(worst_gamma, std::abs(g));
        worst = std::max({worst, g, e});
    }
    r.statistic = worst;
    r.samples = static_cast<std::uint64_t>(t_max);
    r.passed = worst <= r.threshold;
    r.detail = "max relative excess of M_t(-1/2) over 1/(|X| t^2); gamma schedule max |gap| " + fmtg(worst_gamma);
    return r;
}

double information_gain(const Eigen::MatrixXd& K, double noise_variance) {
    if (!(noise_variance > 0.0)) throw InputError("noise variance must be positive");
    if (K.rows() != K.cols()) throw InputError("information_gain needs a square matrix");
    if (K.rows() == 0) return 0.0;
    Eigen::MatrixXd A = K / noise_variance;
    A.diagonal().array() += 1.0;
    const auto f = jittered_cholesky(A, 0.0);
    return f.llt.matrixLLT().diagonal().array().log().sum();
}

double info_gain_constant(double noise_variance) {
    if (!(noise_variance > 0.0)) throw InputError("noise variance must be positive");
    return 2.0 / std::log1p(1.0 / noise_variance);
}

namespace {

// Greedy uncertainty sampling with an incremental (pivoted) Cholesky of K + noise I.
class GreedyMig {
public:
    GreedyMig(const KernelSpec& kernel, const Points& grid, double noise_variance)
        : kernel_(kernel), grid_(grid), noise_(noise_variance),
          var_(Eigen::VectorXd::Constant(grid.rows(), kernel.output_scale)),
          taken_(static_cast<std::size_t>(grid.rows()), false) {
        if (!(noise_variance > 0.0)) throw InputError("noise variance must be positive");
        if (grid.rows() < 1) throw InputError("greedy MIG needs a non-empty grid");
    }

    int steps() const { return static_cast<int>(cols_.size()); }
    double gain() const { return gain_; }

    double step() {
        if (steps() >= grid_.rows()) throw InputError("greedy MIG: T exceeds the grid size");
        Eigen::Index p = -1;
        for (Eigen::Index i = 0; i < var_.size(); ++i)
            if (!taken_[static_cast<std::size_t>(i)] && (p < 0 || var_[i] > var_[p])) p = i;
        const double v = var_[p];
        gain_ += 0.5 * std::log1p(v / noise_);
        Eigen::VectorXd col = cross_covariance(kernel_, grid_, grid_.row(p)).col(0);
        for (const auto& c : cols_) col -= c * c[p];
        col /= std::sqrt(v + noise_);
        var_ = (var_ - col.cwiseAbs2()).cwiseMax(0.0);
        cols_.push_back(std::move(col));
        taken_[static_cast<std::size_t>(p)] = true;
        return gain_;
    }

private:
    const KernelSpec& kernel_;
    const Points& grid_;
    double noise_;
    Eigen::VectorXd var_;
    std::vector<bool> taken_;
    std::vector<Eigen::VectorXd> cols_;
    double gain_ = 0.0;
};

}  // namespace

std::vector<double> greedy_mig_curve(const KernelSpec& kernel, const Points& grid, int t_max, double noise_variance) {
    if (t_max > grid.rows()) throw InputError("greedy MIG: T exceeds the grid size");
    GreedyMig g(kernel, grid, noise_variance);
    std::vector<double> out;
    for (int t = 0; t < t_max; ++t) out.push_back(g.step());
    return out;
}

double greedy_mig(const KernelSpec& kernel, const Points& grid, int T, double noise_variance) {
    if (T <= 0) return 0.0;
    return greedy_mig_curve(kernel, grid, T, noise_variance).back();
}

CheckReport check_info_gain_bound(const RegretTrace& trace, const KernelSpec& kernel, double noise_variance) {
    CheckReport r;
    r.name = "infogain(" + trace.policy + ", trial " + std::to_string(trace.trial) + ")";
    r.seed = trace.seed;
    const auto T = static_cast<Eigen::Index>(trace.rows.size());
    if (T == 0) {
        r.passed = true;
        r.detail = "empty trace";
        return r;
    }
    Points X(T, trace.rows.front().x.size());
    double sum_var = 0.0;
    for (Eigen::Index i = 0; i < T; ++i) {
        X.row(i) = trace.rows[static_cast<std::size_t>(i)].x.transpose();
        const double s = trace.rows[static_cast<std::size_t>(i)].sigma;
        sum_var += s * s;
    }
    const double ig = information_gain(gram_matrix(kernel, X), noise_variance);
    r.statistic = sum_var;
    r.threshold = info_gain_constant(noise_variance) * ig + 1e-8;
    r.samples = static_cast<std::uint64_t>(T);
    r.passed = sum_var <= r.threshold;
    r.detail = "sum sigma^2 vs C1 * I(y; f), I=" + fmtg(ig) + (trace.kernel_fixed ? "" : " (kernel was refit)");
    return r;
}

namespace {

CheckReport check_gaussian_tail(const std::vector<double>& c_grid) {
    CheckReport r;
    r.name = "tails.gaussian_survival";
    double worst = -std::numeric_limits<double>::infinity();
    bool ok = true;
    for (double c : c_grid) {
        if (!(c > 0.0)) throw InputError("tail check needs c > 0");
        const double lhs = normal_sf(c);
        const double rhs = 0.5 * std::exp(-0.5 * c * c);
        worst = std::max(worst, lhs - rhs);
        ok = ok && lhs <= rhs;
    }
    r.statistic = worst;
    r.threshold = 0.0;
    r.samples = c_grid.size();
    r.passed = ok;
    r.detail = "max over c of (1 - Phi(c)) - exp(-c^2/2)/2";
    return r;
}

CheckReport check_positive_part(const std::vector<TailPair>& pairs, int n_draws, std::uint64_t seed) {
    CheckReport r;
    r.name = "tails.positive_part";
    r.seed = seed;
    double worst = -std::numeric_limits<double>::infinity();
    bool ok = true;
    double worst_se = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [m, s] = pairs[k];
        if (!(m <= 0.0) || !(s > 0.0)) throw InputError("positive-part check needs m <= 0 and s > 0");
        Stream stream = Stream(seed).split("positive-part").split(k);
        RunningStats st;
        for (int i = 0; i < n_draws; ++i) st.push(std::max(0.0, m + s * stream.normal()));
        const double bound = s / std::sqrt(2.0 * std::numbers::pi) * std::exp(-m * m / (2.0 * s * s));
        const double z = st.std_error() > 0.0 ? (st.mean() - bound) / st.std_error() : 0.0;
        if (z > worst) {
            worst = z;
            worst_se = st.std_error();
        }
        ok = ok && st.mean() <= bound + 4.0 * st.std_error();
    }
    r.statistic = worst;
    r.threshold = 4.0;
    r.std_error = worst_se;
    r.samples = static_cast<std::uint64_t>(n_draws) * pairs.size();
    r.passed = ok;
    r.detail = "max over (m, s) of (E[Z+] estimate - bound) in standard errors";
    return r;
}

std::vector<double> default_c_grid() {
    std::vector<double> c;
    for (int i = 0; i < 100; ++i) c.push_back(0.01 + (5.0 - 0.01) * i / 99.0);
    return c;
}

std::vector<TailPair> default_pairs() {
    std::vector<TailPair> p;
    for (double m : {0.0, -0.5, -1.0})
        for (double s : {0.5, 1.0, 2.0}) p.push_back({m, s});
    return p;
}

CheckReport mgf_agreement(const std::string& name, const ZetaLaw& law, int n, Stream stream) {
    RunningStats st;
    for (int i = 0; i < n; ++i) st.push(std::exp(-0.5 * sample(law, stream)));
    CheckReport r;
    r.name = name;
    r.statistic = st.mean();
    r.threshold = mgf_at_minus_half(law);
    r.std_error = st.std_error();
    r.samples = static_cast<std::uint64_t>(n);
    r.passed = std::abs(st.mean() - r.threshold) <= 4.0 * st.std_error();
    r.detail = "empirical E[exp(-zeta/2)] vs analytic MGF, 4 standard errors";
    return r;
}

CheckReport mean_agreement(const std::string& name, const ZetaLaw& law, int n, Stream stream) {
    RunningStats st;
    for (int i = 0; i < n; ++i) st.push(sample(law, stream));
    CheckReport r;
    r.name = name;
    r.statistic = st.mean();
    r.threshold = expectation(law);
    r.std_error = st.std_error();
    r.samples = static_cast<std::uint64_t>(n);
    r.passed = std::abs(st.mean() - r.threshold) <= 4.0 * st.std_error();
    r.detail = "empirical mean vs analytic expectation, 4 standard errors";
    return r;
}

}  // namespace

CheckReport check_tail_bounds(const std::vector<double>& c_grid, const std::vector<TailPair>& pairs, int n_draws,
                              std::uint64_t seed) {
    const auto a = check_gaussian_tail(c_grid);
    const auto b = check_positive_part(pairs, n_draws, seed);
    CheckReport r = b;
    r.name = "tails";
    r.passed = a.passed && b.passed;
    r.samples = a.samples + b.samples;
    r.detail = a.name + (a.passed ? " pass" : " FAIL") + " (" + fmtg(a.statistic) + "); " + b.name +
               (b.passed ? " pass" : " FAIL") + " (" + fmtg(b.statistic) + " SE)";
    return r;
}

HorizonResult bsr_horizon(double eta, const DomainInfo& domain, const KernelSpec& kernel, const Points& grid,
                          double noise_variance) {
    if (!(eta > 0.0)) throw InputError("eta must be positive");
    const double c1 = info_gain_constant(noise_variance);
    double c2 = 0.0;
    double rhs = eta;
    if (domain.is_finite()) {
        c2 = 2.0 + irgpucb_params(domain, IrgpucbFinite{}).shift;
    } else {
        c2 = 2.0 + irgpucb_params(domain, IrgpucbAccuracy{eta}).shift;
        rhs = eta / 2.0;
    }
    HorizonResult out;
    out.rhs = rhs;
    GreedyMig g(kernel, grid, noise_variance);
    for (int T = 1; T <= grid.rows(); ++T) {
        const double gamma = g.step();
        const double lhs = std::sqrt(c1 * c2 * gamma / T);
        out.gamma_hat = gamma;
        out.lhs = lhs;
        if (lhs <= rhs) {
            out.horizon = T;
            out.note = "gamma_T estimated by greedy selection (a lower bound), so T is a lower bound on the "
                       "certified horizon";
            return out;
        }
    }
    out.note = "unsatisfiable at this grid: T would exceed |grid| = " + std::to_string(grid.rows());
    return out;
}

std::vector<CheckReport> check_samplers(std::uint64_t seed, int n_draws) {
    std::vector<CheckReport> out;
    const Stream root = Stream(seed).split("samplers");
    ConfidenceSchedule irgp;
    irgp.kind = ScheduleKind::TwoParamExpFinite;
    irgp.domain = DomainInfo::finite(1000);
    const auto law = zeta_law(irgp, 1);
    const double shift = std::get<ShiftedExponential>(law).shift;

    {
        Stream s = root.split("two-param-exp");
        RunningStats st;
        double min_draw = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n_draws; ++i) {
            const double z = sample_zeta(irgp, 1 + i % 1000, s);
            min_draw = std::min(min_draw, z);
            st.push(z);
        }
        CheckReport r;
        r.name = "samplers.two_param_exp_moments";
        r.seed = seed;
        r.statistic = st.mean();
        r.threshold = expected_zeta(irgp, 1);
        // Exp(1/2) has standard deviation 2.
        r.std_error = 2.0 / std::sqrt(static_cast<double>(n_draws));
        r.samples = static_cast<std::uint64_t>(n_draws);
        r.passed = min_draw >= shift && std::abs(st.mean() - r.threshold) <= 4.0 * r.std_error;
        r.detail = "min " + fmtg(min_draw) + " >= s=" + fmtg(shift) + ", mean within 4 SE of s + 1/lambda";
        out.push_back(r);
    }
    {
        const int n = std::max(1, n_draws / 10);
        Stream a = root.split("ks-schedule");
        Stream b = root.split("ks-inverse");
        std::vector<double> xs, ys;
        xs.reserve(static_cast<std::size_t>(n));
        ys.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) xs.push_back(sample_zeta(irgp, 1, a));
        // Inverse transform: s - 2 log U.
        for (int i = 0; i < n; ++i) ys.push_back(shift - 2.0 * std::log(b.open_uniform()));
        const auto ks = ks_two_sample(std::move(xs), std::move(ys));
        CheckReport r;
        r.name = "samplers.two_param_exp_ks";
        r.seed = seed;
        r.statistic = ks.p_value;
        r.threshold = 0.001;
        r.samples = static_cast<std::uint64_t>(2 * n);
        r.passed = ks.p_value > 0.001;
        r.detail = "two-sample KS against s - 2 log U, D=" + fmtg(ks.statistic);
        out.push_back(r);
    }

    ConfidenceSchedule gamma;
    gamma.kind = ScheduleKind::Gamma;
    gamma.domain = DomainInfo::finite(1000);
    gamma.theta = 1.0;
    ConfidenceSchedule trunc;
    trunc.kind = ScheduleKind::TruncNormal;
    trunc.domain = DomainInfo::finite(1000);

    out.push_back(mgf_agreement("samplers.gamma_mgf", zeta_law(gamma, 1), n_draws, root.split("gamma-mgf")));
    out.push_back(mgf_agreement("samplers.trunc_normal_mgf", zeta_law(trunc, 1), n_draws, root.split("trunc-mgf")));
    out.push_back(mgf_agreement("samplers.two_param_exp_mgf", law, n_draws, root.split("exp-mgf")));
    out.push_back(mean_agreement("samplers.gamma_mean", zeta_law(gamma, 1), n_draws, root.split("gamma-mean")));
    out.push_back(mean_agreement("samplers.trunc_normal_mean", zeta_law(trunc, 1), n_draws, root.split("trunc-mean")));
    for (auto& r : out) r.seed = seed;
    return out;
}

std::vector<CheckReport> run_suite(const std::string& name, std::uint64_t seed) {
    const bool all = name == "all";
    bool known = all;
    std::vector<CheckReport> out;
    const auto grid = CandidateSet::regular_grid(2, 10, 0.0, 0.9).points;
    const auto kernel = KernelSpec::isotropic(KernelFamily::SquaredExponential, 0.2, 2);

    if (all || name == "coverage") {
        known = true;
        out.push_back(check_ucb_coverage(kernel, grid, 5, 0.1, 2000, seed));
    }
    if (all || name == "maxbound") {
        known = true;
        for (int n_obs : {0, 5, 20}) out.push_back(check_max_bound(kernel, grid, n_obs, 2000, seed));
    }
    if (all || name == "mgf") {
        known = true;
        for (std::uint64_t n : {10ULL, 1000ULL})
            for (double theta : {0.5, 1.0, 2.0}) out.push_back(check_mgf_condition(n, theta, 1000));
    }
    if (all || name == "infogain") {
        known = true;
        ExperimentConfig cfg;
        cfg.name = "infogain";
        cfg.dim = 2;
        cfg.kernel = kernel;
        cfg.horizon = 30;
        cfg.n_trials = 3;
        cfg.base_seed = seed;
        cfg.threads = 1;
        cfg.policies = {"irgp_ucb", "gp_ucb", "rgp_ucb", "ei", "ts"};
        for (const auto& policy : cfg.policies)
            for (int trial = 0; trial < cfg.n_trials; ++trial) {
                const auto trace = run_trial(cfg, policy, trial);
                out.push_back(check_info_gain_bound(trace, trace.kernel, trace.noise_variance));
            }
    }
    if (all || name == "tails") {
        known = true;
        out.push_back(check_gaussian_tail(default_c_grid()));
        out.push_back(check_positive_part(default_pairs(), 1000000, seed));
    }
    if (all || name == "samplers") {
        known = true;
        for (auto& r : check_samplers(seed)) out.push_back(std::move(r));
    }
    if (!known) throw InputError("unknown validation suite '" + name + "'");
    return out;
}

void print_reports(std::ostream& out, const std::vector<CheckReport>& reports) {
    std::size_t width = 5;
    for (const auto& r : reports) width = std::max(width, r.name.size());
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-*s  %-4s  %14s  %14s  %11s  %9s\n", static_cast<int>(width), "check", "",
                  "statistic", "threshold", "std_error", "samples");
    out << buf;
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof buf, "%-*s  %-4s  %14.8g  %14.8g  %11.4g  %9llu", static_cast<int>(width),
                      r.name.c_str(), r.passed ? "PASS" : "FAIL", r.statistic, r.threshold, r.std_error,
                      static_cast<unsigned long long>(r.samples));
        out << buf << "  " << r.detail << '\n';
    }
}

void write_reports_csv(std::ostream& out, const std::vector<CheckReport>& reports) {
    out << "check,passed,statistic,threshold,std_error,samples,seed,failures,detail\n";
    for (const auto& r : reports) {
        std::string detail;
        for (char c : r.detail) detail += c == '"' ? std::string("\"\"") : std::string(1, c);
        out << '"' << r.name << "\"," << (r.passed ? 1 : 0) << ',' << format_number(r.statistic) << ','
            << format_number(r.threshold) << ',' << format_number(r.std_error) << ',' << r.samples << ',' << r.seed
            << ',' << r.failures << ",\"" << detail << "\"\n";
    }
}

}  // namespace irgpucb
