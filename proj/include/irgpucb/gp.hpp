#pragma once

#include <span>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "irgpucb/kernel.hpp"
#include "irgpucb/random.hpp"

namespace irgpucb {

struct Prediction {
    double mean = 0.0;
    double variance = 0.0;
};

struct BatchPrediction {
    Eigen::VectorXd mean;
    Eigen::VectorXd variance;
};

/// Lower Cholesky factor of A + jitter * I, escalating the jitter by factors of
/// ten from `initial_jitter` up to `max_jitter`. Throws NumericalError carrying
/// an eigenvalue-ratio condition estimate when every attempt fails.
struct JitteredCholesky {
    Eigen::LLT<Eigen::MatrixXd> llt;
    double jitter = 0.0;
};
JitteredCholesky jittered_cholesky(const Eigen::MatrixXd& A, double initial_jitter,
                                   double max_jitter = 1e-6);

/// Exact GP posterior given noisy observations. Immutable once fitted.
class Posterior {
public:
    /// Throws InputError on shape problems or non-positive noise variance,
    /// NumericalError when the Cholesky of K + noise I fails.
    static Posterior fit(const KernelSpec& kernel, Points X, Eigen::VectorXd y, double noise_variance);

    const KernelSpec& kernel() const { return kernel_; }
    const Points& inputs() const { return X_; }
    const Eigen::VectorXd& targets() const { return y_; }
    double noise_variance() const { return noise_variance_; }
    Eigen::Index size() const { return X_.rows(); }
    int dim() const { return kernel_.dim(); }

    /// Lower factor L with L L^T = K + (noise + jitter) I.
    Eigen::MatrixXd chol() const;
    const Eigen::VectorXd& alpha() const { return alpha_; }
    /// (K + (noise + jitter) I)^-1 v.
    Eigen::VectorXd solve(const Eigen::VectorXd& v) const;
    double jitter() const { return jitter_; }

    Prediction predict_at(const Eigen::Ref<const Eigen::VectorXd>& x) const;
    BatchPrediction predict(const Points& Xq) const;
    /// Joint posterior covariance of the latent function over Xq.
    Eigen::MatrixXd covariance(const Points& Xq) const;

    /// 0.5 * log det(K + noise I) from the stored factor.
    double half_log_det() const;

private:
    Posterior() = default;

    KernelSpec kernel_;
    Points X_;
    Eigen::VectorXd y_;
    double noise_variance_ = 0.0;
    double jitter_ = 0.0;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::VectorXd alpha_;
};

inline Posterior fit_posterior(const KernelSpec& kernel, Points X, Eigen::VectorXd y,
                               double noise_variance) {
    return Posterior::fit(kernel, std::move(X), std::move(y), noise_variance);
}

/// -1/2 y^T (K + s I)^-1 y - 1/2 log det(K + s I) - t/2 log(2 pi).
double log_marginal_likelihood(const KernelSpec& kernel, const Points& X, const Eigen::VectorXd& y,
                               double noise_variance);

struct HyperparameterFit {
    KernelSpec kernel;
    double log_evidence = 0.0;
    int evaluations = 0;
    /// Set when no candidate (including the initial kernel) could be evaluated.
    bool warning = false;
};

inline constexpr double kMinLengthScale = 1e-3;
inline constexpr double kMaxLengthScale = 1e3;

/// Evidence maximization over ARD length scales by multi-start coordinate
/// descent in log space with golden-section line searches. `budget` caps the
/// number of evidence evaluations. Family, output scale and noise are fixed.
HyperparameterFit optimize_hyperparameters(const Points& X, const Eigen::VectorXd& y,
                                           double noise_variance, const KernelSpec& init,
                                           int budget);

/// n_draws rows, one column per candidate; each row is an exact joint draw of
/// the latent function from the posterior.
Eigen::MatrixXd sample_joint(const Posterior& posterior, const Points& candidates, int n_draws,
                             Stream& stream);

/// Lower Cholesky factor of the prior Gram over a fixed candidate set, reused
/// across pathwise posterior draws while the kernel stays the same.
struct CandidatePrior {
    KernelSpec kernel;
    Eigen::MatrixXd factor;
    double jitter = 0.0;

    static CandidatePrior build(const KernelSpec& kernel, const Points& candidates);
};

/// Posterior draws over the candidates by correcting prior draws with the data:
/// f + K_cx (K + noise I)^-1 (y - f_x - eps). Every training input must be the
/// candidate `observed[i]`. Same law as sample_joint at O(m^2) per draw.
Eigen::MatrixXd sample_joint_pathwise(const Posterior& posterior, const CandidatePrior& prior,
                                      const Points& candidates, std::span<const Eigen::Index> observed,
                                      int n_draws, Stream& stream);

}  // namespace irgpucb
