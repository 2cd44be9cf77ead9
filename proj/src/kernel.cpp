#include "irgpucb/kernel.hpp"

#include <cmath>

#include "irgpucb/errors.hpp"

namespace irgpucb {

std::string_view to_string(KernelFamily family) {
    switch (family) {
        case KernelFamily::SquaredExponential: return "se";
        case KernelFamily::Matern52: return "matern52";
    }
    return "?";
}

KernelFamily parse_kernel_family(std::string_view name) {
    if (name == "se" || name == "squared_exponential" || name == "rbf" || name == "gaussian")
        return KernelFamily::SquaredExponential;
    if (name == "matern52" || name == "matern") return KernelFamily::Matern52;
    throw InputError("unknown kernel family '" + std::string(name) + "'");
}

KernelSpec KernelSpec::squared_exponential(std::vector<double> length_scales) {
    KernelSpec spec{KernelFamily::SquaredExponential, std::move(length_scales), 1.0};
    spec.validate();
    return spec;
}

KernelSpec KernelSpec::isotropic(KernelFamily family, double length_scale, int dim) {
    KernelSpec spec{family, std::vector<double>(static_cast<std::size_t>(dim), length_scale), 1.0};
    spec.validate();
    return spec;
}

void KernelSpec::validate() const {
    if (length_scales.empty()) throw InputError("kernel needs at least one length scale");
    for (double l : length_scales)
        if (!(l > 0.0) || !std::isfinite(l)) throw InputError("kernel length scales must be positive");
    if (!(output_scale > 0.0)) throw InputError("kernel output scale must be positive");
}

double scaled_sq_distance(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& x2) {
    const auto d = static_cast<Eigen::Index>(spec.length_scales.size());
    if (x.size() != d || x2.size() != d)
        throw InputError("point dimension " + std::to_string(x.size()) + "/" + std::to_string(x2.size()) +
                         " does not match kernel dimension " + std::to_string(d));
    double r2 = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
        const double z = (x[j] - x2[j]) / spec.length_scales[static_cast<std::size_t>(j)];
        r2 += z * z;
    }
    return r2;
}

namespace {

double profile(KernelFamily family, double r2) {
    switch (family) {
        case KernelFamily::SquaredExponential: return std::exp(-0.5 * r2);
        case KernelFamily::Matern52: {
            const double r = std::sqrt(5.0 * r2);
            return (1.0 + r + r * r / 3.0) * std::exp(-r);
        }
    }
    return 0.0;
}

}  // namespace

double eval_kernel(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& x2) {
    return spec.output_scale * profile(spec.family, scaled_sq_distance(spec, x, x2));
}

Eigen::MatrixXd cross_covariance(const KernelSpec& spec, const Points& A, const Points& B) {
    const auto d = static_cast<Eigen::Index>(spec.length_scales.size());
    if ((A.rows() > 0 && A.cols() != d) || (B.rows() > 0 && B.cols() != d))
        throw InputError("point set dimension does not match kernel dimension " + std::to_string(d));
    Eigen::MatrixXd C(A.rows(), B.rows());
    if (A.rows() == 0 || B.rows() == 0) return C;
    const Eigen::RowVectorXd inv_l =
        Eigen::Map<const Eigen::VectorXd>(spec.length_scales.data(), d).cwiseInverse().transpose();
    const Eigen::MatrixXd As = A.array().rowwise() * inv_l.array();
    const Eigen::MatrixXd Bs = B.array().rowwise() * inv_l.array();
    for (Eigen::Index j = 0; j < Bs.rows(); ++j) {
        for (Eigen::Index i = 0; i < As.rows(); ++i) {
            const double r2 = (As.row(i) - Bs.row(j)).squaredNorm();
            C(i, j) = spec.output_scale * profile(spec.family, r2);
        }
    }
    return C;
}

Eigen::MatrixXd gram_matrix(const KernelSpec& spec, const Points& X) {
    Eigen::MatrixXd K = cross_covariance(spec, X, X);
    // Exact symmetry and diagonal, independent of rounding in the distance.
    for (Eigen::Index i = 0; i < K.rows(); ++i) {
        K(i, i) = spec.output_scale;
        for (Eigen::Index j = 0; j < i; ++j) K(j, i) = K(i, j);
    }
    return K;
}

}  // namespace irgpucb
