#include <doctest.h>

#include <cmath>

#include "irgpucb/errors.hpp"
#include "irgpucb/kernel.hpp"

using namespace irgpucb;

TEST_CASE("squared exponential values") {
    const auto k = KernelSpec::squared_exponential({1.0, 2.0});
    Eigen::Vector2d a(0.0, 0.0), b(1.0, 2.0);
    CHECK(eval_kernel(k, a, a) == 1.0);
    CHECK(scaled_sq_distance(k, a, b) == doctest::Approx(2.0));
    CHECK(eval_kernel(k, a, b) == doctest::Approx(std::exp(-1.0)));

    auto k3 = k;
    k3.output_scale = 3.0;
    CHECK(eval_kernel(k3, b, b) == 3.0);
}

TEST_CASE("matern 5/2 values") {
    const auto k = KernelSpec::isotropic(KernelFamily::Matern52, 0.5, 1);
    Eigen::VectorXd a(1), b(1);
    a << 0.0;
    b << 0.25;
    const double r = 0.5;
    const double expected = (1 + std::sqrt(5.0) * r + 5.0 * r * r / 3.0) * std::exp(-std::sqrt(5.0) * r);
    CHECK(eval_kernel(k, a, b) == doctest::Approx(expected));
    CHECK(eval_kernel(k, a, a) == 1.0);
}

TEST_CASE("gram matrix is symmetric with an exact diagonal") {
    const auto k = KernelSpec::isotropic(KernelFamily::SquaredExponential, 0.3, 3);
    Points X = Points::Random(20, 3);
    const auto K = gram_matrix(k, X);
    CHECK(K.rows() == 20);
    for (int i = 0; i < 20; ++i) {
        CHECK(K(i, i) == 1.0);
        for (int j = 0; j < 20; ++j) CHECK(K(i, j) == K(j, i));
    }
    const auto C = cross_covariance(k, X.topRows(5), X);
    CHECK((C - K.topRows(5)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(gram_matrix(k, Points(0, 3)).size() == 0);
}

TEST_CASE("kernel input checks") {
    const auto k = KernelSpec::isotropic(KernelFamily::SquaredExponential, 0.3, 2);
    Eigen::VectorXd a = Eigen::VectorXd::Zero(2), b = Eigen::VectorXd::Zero(3);
    CHECK_THROWS_AS(eval_kernel(k, a, b), InputError);
    CHECK_THROWS_AS(KernelSpec::squared_exponential({1.0, -1.0}).validate(), InputError);
    CHECK_THROWS_AS(KernelSpec::squared_exponential({}).validate(), InputError);
    CHECK(parse_kernel_family("rbf") == KernelFamily::SquaredExponential);
    CHECK(parse_kernel_family("matern52") == KernelFamily::Matern52);
    CHECK_THROWS_AS(parse_kernel_family("linear"), InputError);
    CHECK(parse_kernel_family(to_string(KernelFamily::Matern52)) == KernelFamily::Matern52);
}
