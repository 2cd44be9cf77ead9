#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace irgpucb {

using Point = Eigen::VectorXd;
/// One point per row.
using Points = Eigen::MatrixXd;

enum class KernelFamily { SquaredExponential, Matern52 };

std::string_view to_string(KernelFamily family);
/// Accepts "se", "squared_exponential", "rbf", "gaussian", "matern52".
KernelFamily parse_kernel_family(std::string_view name);

/// Stationary ARD kernel. k(x, x) == output_scale for every x.
struct KernelSpec {
    KernelFamily family = KernelFamily::SquaredExponential;
    std::vector<double> length_scales;
    double output_scale = 1.0;

    static KernelSpec squared_exponential(std::vector<double> length_scales);
    static KernelSpec isotropic(KernelFamily family, double length_scale, int dim);

    int dim() const { return static_cast<int>(length_scales.size()); }
    /// Throws InputError unless every length scale and the output scale are positive.
    void validate() const;
};

/// Sum over dimensions of ((x_j - x2_j) / l_j)^2.
double scaled_sq_distance(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& x2);

double eval_kernel(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& x2);

/// K(i, j) = k(X_i, X_j). An empty X gives a 0x0 matrix.
Eigen::MatrixXd gram_matrix(const KernelSpec& spec, const Points& X);

/// C(i, j) = k(A_i, B_j).
Eigen::MatrixXd cross_covariance(const KernelSpec& spec, const Points& A, const Points& B);

/// Prior jitter added before any Cholesky of a Gram matrix.
inline constexpr double kPriorJitter = 1e-10;

}  // namespace irgpucb
