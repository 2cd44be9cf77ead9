#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "irgpucb/errors.hpp"
#include "irgpucb/stats.hpp"
#include "irgpucb/validate.hpp"

using namespace irgpucb;

namespace {

// Exhaustive maximum information gain over all size-T subsets.
double brute_force_gamma(const KernelSpec& k, const Points& grid, int T, double noise) {
    const int m = static_cast<int>(grid.rows());
    double best = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(T));
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == T) {
            Points X(T, grid.cols());
            for (int i = 0; i < T; ++i) X.row(i) = grid.row(idx[static_cast<std::size_t>(i)]);
            best = std::max(best, information_gain(gram_matrix(k, X), noise));
            return;
        }
        for (int i = start; i < m; ++i) {
            idx[static_cast<std::size_t>(depth)] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return best;
}

}  // namespace

TEST_CASE("information gain") {
    CHECK(information_gain(Eigen::MatrixXd::Ones(1, 1), 1.0) == doctest::Approx(0.5 * std::log(2.0)));
    CHECK(information_gain(Eigen::MatrixXd::Ones(1, 1), 1.0) == doctest::Approx(0.34657).epsilon(1e-4));
    CHECK(information_gain(Eigen::MatrixXd::Zero(5, 5), 1e-4) == 0.0);
    CHECK(information_gain(Eigen::MatrixXd(0, 0), 1e-4) == 0.0);
    CHECK(info_gain_constant(1e-4) == doctest::Approx(0.21715).epsilon(1e-4));
    // The bound is tight at T = 1.
    CHECK(info_gain_constant(1e-4) * information_gain(Eigen::MatrixXd::Ones(1, 1), 1e-4) == doctest::Approx(1.0));
    CHECK_THROWS_AS(information_gain(Eigen::MatrixXd::Ones(1, 1), 0.0), InputError);
}

TEST_CASE("greedy information gain against brute force") {
    Stream s(21);
    for (int inst = 0; inst < 10; ++inst) {
        const int m = 4 + static_cast<int>(s.below(5));
        Points grid(m, 2);
        for (int i = 0; i < m; ++i) grid.row(i) << s.uniform(), s.uniform();
        const auto k = KernelSpec::isotropic(KernelFamily::SquaredExponential, 0.2 + 0.5 * s.uniform(), 2);
        const double noise = inst % 2 ? 1e-4 : 0.1;
        const auto curve = greedy_mig_curve(k, grid, 3, noise);
        for (int T = 1; T <= 3; ++T) {
            const double exact = brute_force_gamma(k, grid, T, noise);
            CHECK(curve[static_cast<std::size_t>(T - 1)] <= exact + 1e-9);
            CHECK(curve[static_cast<std::size_t>(T - 1)] >= (1 - 1 / std::numbers::e) * exact - 1e-9);
            if (T > 1) CHECK(curve[static_cast<std::size_t>(T - 1)] >= curve[static_cast<std::size_t>(T - 2)]);
        }
        // Incremental gains agree with the log-determinant of the chosen set.
        CHECK(greedy_mig(k, grid, 1, noise) == doctest::Approx(0.5 * std::log1p(1.0 / noise)));
    }
    CHECK_THROWS_AS(greedy_mig_curve(KernelSpec::isotropic(KernelFamily::SquaredExponential, 0.2, 1),
                                     Points::Zero(2, 1), 3, 1e-4),
                    InputError);
}

TEST_CASE("beta_delta") {
    CHECK(beta_delta(100, 0.1) == doctest::Approx(2 * std::log(500.0)));
    CHECK(beta_delta(2, 1.0 - 1e-12) == doctest::Approx(0.0).epsilon(1e-9).scale(1.0));
    CHECK_THROWS_AS(beta_delta(10, 0.0), InputError);
    CHECK_THROWS_AS(beta_delta(10, 1.0), InputError);
}

TEST_CASE("MGF condition") {
    const auto r = check_mgf_condition(1000, 1.0, 1000);
    CHECK(r.passed);
    CHECK(std::abs(r.statistic) <= 1e-12);
    CHECK(check_mgf_condition(1, 1.0, 50).passed);
    CHECK(check_mgf_condition(10, 0.5, 1000).passed);
    CHECK_THROWS_AS(check_mgf_condition(10, 0.0, 10), InputError);
}

TEST_CASE("coverage and max-bound checks are deterministic and pass") {
    const auto grid = CandidateSet::regular_grid(2, 10, 0.0, 0.9).points;
    const auto k = KernelSpec::isotropic(KernelFamily::SquaredExponential, 0.2, 2);
    const auto a = check_ucb_coverage(k, grid, 5, 0.1, 300, 4);
    const auto b = check_ucb_coverage(k, grid, 5, 0.1, 300, 4);
    CHECK(a.statistic == b.statistic);
    CHECK(a.passed);
    CHECK(a.threshold == doctest::Approx(0.1 + 3 * std::sqrt(0.09 / 300)));

    const auto m = check_max_bound(k, grid, 5, 300, 4);
    CHECK(m.passed);
    CHECK(m.statistic > 0.0);
    CHECK(m.statistic == check_max_bound(k, grid, 5, 300, 4).statistic);

    // Degenerate grid of one repeated point.
    const Points same = Points::Zero(3, 2);
    const auto d = check_max_bound(k, same, 0, 500, 1);
    CHECK(d.passed);
    CHECK(d.statistic > 0.0);
    CHECK_THROWS_AS(check_max_bound(k, Points::Zero(2, 2), 0, 100, 1), InputError);
}

TEST_CASE("tail bounds") {
    CHECK(normal_sf(1.0) == doctest::Approx(0.15866).epsilon(1e-4));
    CHECK(0.5 * std::exp(-0.5) == doctest::Approx(0.30327).epsilon(1e-4));
    const auto r = check_tail_bounds({1e-6, 0.5, 1.0, 3.0}, {{0.0, 1.0}, {-1.0, 0.5}}, 100000, 2);
    CHECK(r.passed);
    CHECK_THROWS_AS(check_tail_bounds({0.0}, {}, 10, 1), InputError);
    CHECK_THROWS_AS(check_tail_bounds({1.0}, {{0.5, 1.0}}, 10, 1), InputError);
}

TEST_CASE("BSR horizon") {
    const auto grid = CandidateSet::regular_grid(2, 6, 0.0, 1.0).points;
    const auto k = KernelSpec::isotropic(KernelFamily::SquaredExponential, 0.3, 2);
    const auto dom = DomainInfo::finite(36);
    const auto easy = bsr_horizon(100.0, dom, k, grid, 1e-4);
    REQUIRE(easy.horizon);
    CHECK(*easy.horizon == 1);
    int last = 0;
    for (double eta : {8.0, 4.0, 2.0, 1.5}) {
        const auto r = bsr_horizon(eta, dom, k, grid, 1e-4);
        if (!r.horizon) break;
        CHECK(*r.horizon >= last);
        CHECK(r.lhs <= r.rhs);
        last = *r.horizon;
    }
    const auto hard = bsr_horizon(1e-3, dom, k, grid, 1e-4);
    CHECK_FALSE(hard.horizon);
    CHECK(hard.note.find("unsatisfiable") != std::string::npos);
    const auto cont = bsr_horizon(100.0, DomainInfo::continuous(1, 1, 1, 2), k, grid, 1e-4);
    CHECK(cont.rhs == 50.0);
}

TEST_CASE("information-gain bound holds on harness traces") {
    ExperimentConfig c;
    c.dim = 2;
    c.grid_points = 7;
    c.kernel = KernelSpec::isotropic(KernelFamily::SquaredExponential, 0.25, 2);
    c.horizon = 12;
    c.initial_design = 0;
    for (const auto* p : {"irgp_ucb", "gp_ucb", "ei", "ts"}) {
        const auto t = run_trial(c, p, 0);
        const auto r = check_info_gain_bound(t, t.kernel, t.noise_variance);
        CHECK(r.passed);
        // With no initial design the first query has unit prior variance: tight to rounding.
        CHECK(t.rows[0].sigma == doctest::Approx(1.0));
    }
}

TEST_CASE("reports print and serialize") {
    std::vector<CheckReport> reports(2);
    reports[0].name = "a";
    reports[0].passed = true;
    reports[1].name = "b";
    reports[1].detail = "quote \" inside";
    std::ostringstream text, csv;
    print_reports(text, reports);
    write_reports_csv(csv, reports);
    CHECK(text.str().find("PASS") != std::string::npos);
    CHECK(text.str().find("FAIL") != std::string::npos);
    CHECK(csv.str().find("\"quote \"\" inside\"") != std::string::npos);
    CHECK_THROWS_AS(run_suite("nope", 0), InputError);
}
