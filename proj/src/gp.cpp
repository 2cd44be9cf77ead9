#include "irgpucb/gp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "irgpucb/errors.hpp"

namespace irgpucb {

JitteredCholesky jittered_cholesky(const Eigen::MatrixXd& A, double initial_jitter, double max_jitter) {
    const Eigen::Index n = A.rows();
    double jitter = initial_jitter;
    for (;;) {
        Eigen::MatrixXd M = A;
        if (jitter > 0.0) M.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(M);
        bool ok = llt.info() == Eigen::Success;
        if (ok) {
            // LLT can report success with a NaN or zero pivot on degenerate input.
            const auto diag = llt.matrixLLT().diagonal();
            ok = (diag.array() > 0.0).all() && diag.allFinite();
        }
        if (ok) return {std::move(llt), jitter};
        if (jitter >= max_jitter) break;
        jitter = jitter > 0.0 ? jitter * 10.0 : 1e-10;
        jitter = std::min(jitter, max_jitter);
    }
    double cond = std::numeric_limits<double>::infinity();
    if (n > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A, Eigen::EigenvaluesOnly);
        const double lo = eig.eigenvalues().minCoeff();
        const double hi = eig.eigenvalues().maxCoeff();
        if (lo > 0.0) cond = hi / lo;
    }
    throw NumericalError("Cholesky failed for " + std::to_string(n) + "x" + std::to_string(n) +
                             " matrix after jitter " + std::to_string(max_jitter) +
                             " (condition estimate " + std::to_string(cond) + ")",
                         cond);
}

Posterior Posterior::fit(const KernelSpec& kernel, Points X, Eigen::VectorXd y, double noise_variance) {
    kernel.validate();
    if (!(noise_variance > 0.0)) throw InputError("noise variance must be positive");
    if (X.rows() != y.size())
        throw InputError("got " + std::to_string(X.rows()) + " inputs but " + std::to_string(y.size()) + " targets");
    if (X.rows() > 0 && X.cols() != kernel.dim())
        throw InputError("training inputs have dimension " + std::to_string(X.cols()) + ", kernel expects " +
                         std::to_string(kernel.dim()));
    Posterior p;
    p.kernel_ = kernel;
    p.noise_variance_ = noise_variance;
    if (X.rows() == 0) X.resize(0, kernel.dim());
    Eigen::MatrixXd K = gram_matrix(kernel, X);
    K.diagonal().array() += noise_variance;
    auto factor = jittered_cholesky(K, 0.0);
    p.llt_ = std::move(factor.llt);
    p.jitter_ = factor.jitter;
    p.alpha_ = X.rows() > 0 ? Eigen::VectorXd(p.llt_.solve(y)) : Eigen::VectorXd();
    p.X_ = std::move(X);
    p.y_ = std::move(y);
    return p;
}

Eigen::MatrixXd Posterior::chol() const {
    if (size() == 0) return {};
    return llt_.matrixL();
}

Eigen::VectorXd Posterior::solve(const Eigen::VectorXd& v) const {
    if (v.size() != size()) throw InputError("solve: vector length does not match the data size");
    if (size() == 0) return {};
    return llt_.solve(v);
}

double Posterior::half_log_det() const {
    if (size() == 0) return 0.0;
    return llt_.matrixLLT().diagonal().array().log().sum();
}

Prediction Posterior::predict_at(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    Points q(1, x.size());
    q.row(0) = x.transpose();
    const auto batch = predict(q);
    return {batch.mean[0], batch.variance[0]};
}

BatchPrediction Posterior::predict(const Points& Xq) const {
    if (Xq.rows() > 0 && Xq.cols() != dim())
        throw InputError("query dimension " + std::to_string(Xq.cols()) + " does not match kernel dimension " +
                         std::to_string(dim()));
    BatchPrediction out;
    const double prior = kernel_.output_scale;
    if (size() == 0) {
        out.mean = Eigen::VectorXd::Zero(Xq.rows());
        out.variance = Eigen::VectorXd::Constant(Xq.rows(), prior);
        return out;
    }
    const Eigen::MatrixXd Kxq = cross_covariance(kernel_, X_, Xq);
    out.mean = Kxq.transpose() * alpha_;
    const Eigen::MatrixXd V = llt_.matrixL().solve(Kxq);
    out.variance = (prior - V.colwise().squaredNorm().transpose().array()).max(0.0);
    return out;
}

Eigen::MatrixXd Posterior::covariance(const Points& Xq) const {
    Eigen::MatrixXd C = gram_matrix(kernel_, Xq);
    if (size() == 0) return C;
    const Eigen::MatrixXd V = llt_.matrixL().solve(cross_covariance(kernel_, X_, Xq));
    C.noalias() -= V.transpose() * V;
    return C;
}

double log_marginal_likelihood(const KernelSpec& kernel, const Points& X, const Eigen::VectorXd& y,
                               double noise_variance) {
    const auto post = Posterior::fit(kernel, X, y, noise_variance);
    if (post.size() == 0) return 0.0;
    const double t = static_cast<double>(post.size());
    return -0.5 * y.dot(post.alpha()) - post.half_log_det() - 0.5 * t * std::log(2.0 * std::numbers::pi);
}

namespace {

class EvidenceSearch {
public:
    EvidenceSearch(const Points& X, const Eigen::VectorXd& y, double noise, KernelSpec base, int budget)
        : X_(X), y_(y), noise_(noise), base_(std::move(base)), budget_(budget) {}

    bool exhausted() const { return used_ >= budget_; }
    int used() const { return used_; }

    // Evidence at the given log length scales; -inf when the factorization fails.
    double operator()(const Eigen::VectorXd& log_ls) {
        ++used_;
        KernelSpec spec = base_;
        for (Eigen::Index j = 0; j < log_ls.size(); ++j) spec.length_scales[static_cast<std::size_t>(j)] = std::exp(log_ls[j]);
        try {
            const double v = log_marginal_likelihood(spec, X_, y_, noise_);
            return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
        } catch (const NumericalError&) {
            return -std::numeric_limits<double>::infinity();
        }
    }

private:
    const Points& X_;
    const Eigen::VectorXd& y_;
    double noise_;
    KernelSpec base_;
    int budget_;
    int used_ = 0;
};

}  // namespace

HyperparameterFit optimize_hyperparameters(const Points& X, const Eigen::VectorXd& y, double noise_variance,
                                           const KernelSpec& init, int budget) {
    init.validate();
    HyperparameterFit result{init, -std::numeric_limits<double>::infinity(), 0, false};
    if (budget <= 0) return result;
    if (X.rows() < 2) throw InputError("hyperparameter fitting needs at least two observations");

    const double lo = std::log(kMinLengthScale);
    const double hi = std::log(kMaxLengthScale);
    const Eigen::Index d = init.dim();
    EvidenceSearch evidence(X, y, noise_variance, init, budget);

    Eigen::VectorXd best_x(d);
    for (Eigen::Index j = 0; j < d; ++j)
        best_x[j] = std::clamp(std::log(init.length_scales[static_cast<std::size_t>(j)]), lo, hi);
    double best = evidence(best_x);
    const double init_value = best;
    // The initial kernel is kept verbatim unless something strictly better turns up.
    bool improved = false;

    constexpr std::array<double, 4> kStarts{0.05, 0.2, 1.0, 5.0};
    constexpr double kInvPhi = 0.6180339887498949;
    constexpr double kHalfWidth = 2.5;
    constexpr int kSweeps = 2;
    constexpr int kLineEvals = 12;

    for (std::size_t start = 0; start <= kStarts.size() && !evidence.exhausted(); ++start) {
        Eigen::VectorXd x = start == 0 ? best_x : Eigen::VectorXd::Constant(d, std::log(kStarts[start - 1]));
        double fx = start == 0 ? best : evidence(x);
        for (int sweep = 0; sweep < kSweeps && !evidence.exhausted(); ++sweep) {
            for (Eigen::Index j = 0; j < d && !evidence.exhausted(); ++j) {
                double a = std::max(lo, x[j] - kHalfWidth);
                double b = std::min(hi, x[j] + kHalfWidth);
                Eigen::VectorXd probe = x;
                auto at = [&](double v) {
                    probe[j] = v;
                    return evidence(probe);
                };
                double c = b - kInvPhi * (b - a);
                double e = a + kInvPhi * (b - a);
                double fc = at(c);
                double fe = at(e);
                for (int k = 0; k < kLineEvals && !evidence.exhausted(); ++k) {
                    if (fc >= fe) {
                        b = e;
                        e = c;
                        fe = fc;
                        c = b - kInvPhi * (b - a);
                        fc = at(c);
                    } else {
                        a = c;
                        c = e;
                        fc = fe;
                        e = a + kInvPhi * (b - a);
                        fe = at(e);
                    }
                }
                const double cand = fc >= fe ? c : e;
                const double fcand = std::max(fc, fe);
                if (fcand > fx) {
                    x[j] = cand;
                    fx = fcand;
                }
            }
        }
        if (fx > best) {
            best = fx;
            best_x = x;
            improved = true;
        }
    }

    result.evaluations = evidence.used();
    if (!std::isfinite(best)) {
        result.warning = true;
        return result;
    }
    if (improved && best > init_value) {
        for (Eigen::Index j = 0; j < d; ++j)
            result.kernel.length_scales[static_cast<std::size_t>(j)] = std::exp(best_x[j]);
    }
    result.log_evidence = best;
    return result;
}

Eigen::MatrixXd sample_joint(const Posterior& posterior, const Points& candidates, int n_draws, Stream& stream) {
    if (candidates.rows() < 1) throw InputError("sample_joint needs at least one candidate");
    const Eigen::Index m = candidates.rows();
    if (n_draws <= 0) return Eigen::MatrixXd(0, m);
    const auto pred = posterior.predict(candidates);
    const auto factor = jittered_cholesky(posterior.covariance(candidates), kPriorJitter);
    Eigen::MatrixXd Z(n_draws, m);
    for (Eigen::Index i = 0; i < n_draws; ++i)
        for (Eigen::Index j = 0; j < m; ++j) Z(i, j) = stream.normal();
    Eigen::MatrixXd draws = Z * factor.llt.matrixU();
    draws.rowwise() += pred.mean.transpose();
    return draws;
}

CandidatePrior CandidatePrior::build(const KernelSpec& kernel, const Points& candidates) {
    if (candidates.rows() < 1) throw InputError("candidate prior needs at least one candidate");
    auto f = jittered_cholesky(gram_matrix(kernel, candidates), kPriorJitter);
    return {kernel, f.llt.matrixL(), f.jitter};
}

Eigen::MatrixXd sample_joint_pathwise(const Posterior& posterior, const CandidatePrior& prior,
                                      const Points& candidates, std::span<const Eigen::Index> observed,
                                      int n_draws, Stream& stream) {
    const Eigen::Index m = candidates.rows();
    if (prior.factor.rows() != m) throw InputError("candidate prior does not match the candidate set");
    if (static_cast<Eigen::Index>(observed.size()) != posterior.size())
        throw InputError("observed ids do not match the posterior data");
    if (n_draws <= 0) return Eigen::MatrixXd(0, m);
    for (auto id : observed)
        if (id < 0 || id >= m) throw InputError("observed id out of range");

    const Eigen::Index n = posterior.size();
    Eigen::MatrixXd Kcx;
    if (n > 0) Kcx = cross_covariance(posterior.kernel(), candidates, posterior.inputs());
    const double noise_sd = std::sqrt(posterior.noise_variance());
    Eigen::MatrixXd draws(n_draws, m);
    Eigen::VectorXd z(m), r(n);
    for (int k = 0; k < n_draws; ++k) {
        for (Eigen::Index j = 0; j < m; ++j) z[j] = stream.normal();
        Eigen::VectorXd f = prior.factor.triangularView<Eigen::Lower>() * z;
        if (n > 0) {
            for (Eigen::Index i = 0; i < n; ++i)
                r[i] = posterior.targets()[i] - f[observed[static_cast<std::size_t>(i)]] - noise_sd * stream.normal();
            f += Kcx * posterior.solve(r);
        }
        draws.row(k) = f.transpose();
    }
    return draws;
}

}  // namespace irgpucb
