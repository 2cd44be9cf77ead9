#include <doctest.h>

#include <cmath>
#include <numbers>

#include "irgpucb/confidence.hpp"
#include "irgpucb/errors.hpp"
#include "irgpucb/stats.hpp"

using namespace irgpucb;

TEST_CASE("GP-UCB beta on a finite domain") {
    const auto d = DomainInfo::finite(1000);
    CHECK(beta_gpucb(d, 1).value == doctest::Approx(11.978).epsilon(1e-4));
    CHECK(beta_gpucb(d, 500).value == doctest::Approx(36.836).epsilon(1e-4));
    CHECK(std::abs(beta_gpucb(d, 1).value - 11.977633) < 1e-6);
    CHECK(std::abs(beta_gpucb(d, 500).value - 36.836066) < 1e-6);
    // |X| = 1, t = 1: 2 log(1 / sqrt(2 pi)) < 0 is clamped.
    const auto tiny = beta_gpucb(DomainInfo::finite(1), 1);
    CHECK(tiny.value == 0.0);
    CHECK(tiny.clamped);
    CHECK_THROWS_AS(beta_gpucb(d, 0), InputError);
}

TEST_CASE("GP-UCB beta on a continuous domain") {
    const auto d = DomainInfo::continuous(2.0, 1.5, 1.0, 3);
    const int t = 4;
    const double tau = 1.5 * 3 * 1.0 * t * t * (std::sqrt(std::log(6.0)) + std::sqrt(std::numbers::pi) / 2);
    CHECK(discretization_tau(d.as_continuous(), t) == doctest::Approx(tau));
    const double expected = 2 * 3 * std::log(tau) + 2 * std::log(t * t / std::sqrt(2 * std::numbers::pi));
    CHECK(beta_gpucb(d, t).value == doctest::Approx(expected));
    // log(a d) < 0 contributes nothing under the root.
    CHECK(lipschitz_factor({0.1, 1, 1, 1}) == doctest::Approx(std::sqrt(std::numbers::pi) / 2));
}

TEST_CASE("IRGP-UCB shift") {
    const auto p = irgpucb_params(DomainInfo::finite(1000), IrgpucbFinite{});
    CHECK(p.shift == doctest::Approx(12.4292).epsilon(1e-5));
    CHECK(p.rate == 0.5);
    CHECK(p.shift + 1 / p.rate == doctest::Approx(14.4292).epsilon(1e-5));
    CHECK_FALSE(p.clamped);

    const auto one = irgpucb_params(DomainInfo::finite(1), IrgpucbFinite{});
    CHECK(one.shift == 0.0);
    CHECK(one.clamped);
    CHECK(irgpucb_params(DomainInfo::finite(2), IrgpucbFinite{}).shift == doctest::Approx(0.0));

    const auto c = DomainInfo::continuous(1.0, 1.0, 1.0, 2);
    const double tau = discretization_tau(c.as_continuous(), 3);
    CHECK(irgpucb_params(c, IrgpucbAtIteration{3}).shift == doctest::Approx(2 * 2 * std::log(tau) - 2 * std::log(2.0)));
    const double eta = 0.1;
    const double tau_eta = 2 * 1.0 * 2 * 1.0 * lipschitz_factor(c.as_continuous()) / eta;
    CHECK(irgpucb_params(c, IrgpucbAccuracy{eta}).shift ==
          doctest::Approx(2 * 2 * std::log(tau_eta) - 2 * std::log(2.0)));
    CHECK_THROWS_AS(irgpucb_params(c, IrgpucbAccuracy{0.0}), InputError);
}

TEST_CASE("Gamma shape") {
    CHECK(gamma_kappa(1000, 1, 1.0) == doctest::Approx(17.0366).epsilon(1e-5));
    // |X| = 1: kappa = 2 log t / log 1.5.
    CHECK(gamma_kappa(1, 7, 1.0) == doctest::Approx(2 * std::log(7.0) / std::log(1.5)));
    CHECK(gamma_kappa(1, 1, 1.0) == 0.0);
    CHECK_THROWS_AS(gamma_kappa(1000, 1, 0.0), InputError);
}

TEST_CASE("discretization size") {
    const auto d = DomainInfo::continuous(1.0, 1.0, 1.0, 2);
    const double tau = discretization_tau(d.as_continuous(), 2);
    CHECK(discretization_size(d, 2) == static_cast<std::uint64_t>(std::ceil(tau) * std::ceil(tau)));
    CHECK(log_discretization_size(d, 2) == doctest::Approx(2 * std::log(std::ceil(tau))));
    CHECK(discretization_size(DomainInfo::finite(77), 9) == 77);
    CHECK_THROWS_AS(discretization_size(DomainInfo::continuous(1, 1, 1, 12), 1000), InputError);
    CHECK(std::isfinite(log_discretization_size(DomainInfo::continuous(1, 1, 1, 12), 1000)));
}

TEST_CASE("MGF at -1/2 for each law") {
    CHECK(mgf_at_minus_half(GammaLaw{3.0, 2.0}) == doctest::Approx(std::pow(2.0, -3.0)));
    CHECK(mgf_at_minus_half(ShiftedExponential{4.0, 0.5}) == doctest::Approx(0.5 * std::exp(-2.0)));
    const double tn = std::exp(-5.0 / 2 + 1.0 / 8) * (normal_cdf(1.5) - normal_cdf(-0.5)) /
                      (normal_cdf(1.0) - normal_cdf(-1.0));
    CHECK(mgf_at_minus_half(TruncatedNormalLaw{5.0}) == doctest::Approx(tn));
    CHECK_THROWS_AS(mgf_at_minus_half(PointMass{1.0}), ContractError);
    CHECK(expectation(ShiftedExponential{4.0, 0.5}) == 6.0);
    CHECK(expectation(GammaLaw{3.0, 2.0}) == 6.0);
    CHECK(expectation(TruncatedNormalLaw{5.0}) == 5.0);
}

TEST_CASE("schedules") {
    ConfidenceSchedule g;
    g.kind = ScheduleKind::Gamma;
    g.domain = DomainInfo::finite(1000);
    g.theta = 1.0;
    CHECK(g.randomized());
    CHECK(expected_zeta(g, 1) == doctest::Approx(17.0366).epsilon(1e-5));
    // The Gamma schedule saturates the MGF condition.
    for (int t : {1, 10, 100, 1000}) CHECK(mgf_at_minus_half(g, t) * 1000.0 * t * t == doctest::Approx(1.0));

    ConfidenceSchedule e;
    e.kind = ScheduleKind::TwoParamExpFinite;
    e.domain = DomainInfo::finite(1000);
    CHECK(expected_zeta(e, 1) == doctest::Approx(14.4292).epsilon(1e-5));
    CHECK(expected_zeta(e, 500) == expected_zeta(e, 1));

    ConfidenceSchedule tn;
    tn.kind = ScheduleKind::TruncNormal;
    tn.domain = DomainInfo::finite(1000);
    CHECK(expected_zeta(tn, 2) == doctest::Approx(2 * std::log(4000.0) + 1));

    ConfidenceSchedule det;
    det.kind = ScheduleKind::DeterministicFinite;
    det.domain = DomainInfo::finite(1000);
    CHECK_FALSE(det.randomized());
    CHECK(deterministic_beta(det, 500).value == doctest::Approx(36.836).epsilon(1e-4));
    Stream s(1);
    CHECK(sample_zeta(det, 500, s) == deterministic_beta(det, 500).value);
    CHECK(s.counter() == 0);
    CHECK_THROWS_AS(deterministic_beta(e, 1), ContractError);

    ConfidenceSchedule h;
    h.kind = ScheduleKind::FixedHeuristic;
    h.dim = 3;
    CHECK(deterministic_beta(h, 5).value == doctest::Approx(0.2 * 3 * std::log(10.0)));

    ConfidenceSchedule wrong;
    wrong.kind = ScheduleKind::DeterministicContinuous;
    wrong.domain = DomainInfo::finite(10);
    CHECK_THROWS_AS(wrong.validate(), InputError);

    for (auto kind : {ScheduleKind::DeterministicFinite, ScheduleKind::Gamma, ScheduleKind::TwoParamExpAccuracy,
                      ScheduleKind::HeuristicTwoParamExp})
        CHECK(parse_schedule_kind(to_string(kind)) == kind);
    CHECK_THROWS_AS(parse_schedule_kind("beta"), InputError);
}

TEST_CASE("sampled zeta respects the law's support") {
    ConfidenceSchedule e;
    e.kind = ScheduleKind::TwoParamExpFinite;
    e.domain = DomainInfo::finite(1000);
    ConfidenceSchedule tn = e;
    tn.kind = ScheduleKind::TruncNormal;
    Stream s(5);
    const double shift = irgpucb_params(e.domain, IrgpucbFinite{}).shift;
    const double m = expected_zeta(tn, 3);
    for (int i = 0; i < 10000; ++i) {
        REQUIRE(sample_zeta(e, 1, s) >= shift);
        const double z = sample_zeta(tn, 3, s);
        REQUIRE(z >= m - 1.0);
        REQUIRE(z <= m + 1.0);
    }
}
