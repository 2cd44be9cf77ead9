#include <doctest.h>

#include <cmath>
#include <set>

#include "irgpucb/random.hpp"
#include "irgpucb/stats.hpp"

using irgpucb::RunningStats;
using irgpucb::Stream;

TEST_CASE("streams are pure functions of seed and position") {
    Stream a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    CHECK(a.counter() == 100);

    Stream c(43);
    CHECK(Stream(42).next_u64() != c.next_u64());
}

TEST_CASE("split does not advance the parent and gives distinct children") {
    Stream root(7);
    const auto before = root.counter();
    Stream x = root.split("noise");
    Stream y = root.split("policy");
    Stream z = root.split(std::uint64_t{0});
    CHECK(root.counter() == before);
    CHECK(x.key() != y.key());
    CHECK(x.key() != z.key());
    CHECK(root.split("noise").next_u64() == x.next_u64());
}

TEST_CASE("uniform draws stay in range") {
    Stream s(1);
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const double v = s.open_uniform();
        REQUIRE(v > 0.0);
        REQUIRE(v < 1.0);
    }
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto k = s.below(7);
        REQUIRE(k < 7);
        seen.insert(k);
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("normal, exponential and gamma moments") {
    Stream s(2);
    RunningStats n, e, g, gs;
    for (int i = 0; i < 200000; ++i) {
        n.push(s.normal());
        e.push(s.exponential(0.5));
        g.push(s.gamma(3.5, 2.0));
        gs.push(s.gamma(0.3, 1.0));
    }
    CHECK(std::abs(n.mean()) < 4 * n.std_error());
    CHECK(n.variance() == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(e.mean() - 2.0) < 4 * e.std_error());
    CHECK(e.variance() == doctest::Approx(4.0).epsilon(0.03));
    CHECK(std::abs(g.mean() - 7.0) < 4 * g.std_error());
    CHECK(g.variance() == doctest::Approx(14.0).epsilon(0.03));
    CHECK(std::abs(gs.mean() - 0.3) < 4 * gs.std_error());
    CHECK(s.gamma(0.0, 1.0) == 0.0);
}

TEST_CASE("truncated normal respects its bounds") {
    Stream s(3);
    RunningStats st;
    for (int i = 0; i < 100000; ++i) {
        const double z = s.truncated_standard_normal(1.0);
        REQUIRE(std::abs(z) <= 1.0);
        st.push(z);
    }
    CHECK(std::abs(st.mean()) < 4 * st.std_error());
    // Var of N(0,1) truncated to [-1, 1]: 1 - 2 phi(1) / (2 Phi(1) - 1).
    const double var = 1.0 - 2.0 * irgpucb::normal_pdf(1.0) / (2.0 * irgpucb::normal_cdf(1.0) - 1.0);
    CHECK(st.variance() == doctest::Approx(var).epsilon(0.02));
}

TEST_CASE("two-sample KS") {
    Stream s(4);
    std::vector<double> a, b, c;
    for (int i = 0; i < 5000; ++i) {
        a.push_back(s.normal());
        b.push_back(s.normal());
        c.push_back(s.normal() + 0.3);
    }
    CHECK(irgpucb::ks_two_sample(a, b).p_value > 0.001);
    CHECK(irgpucb::ks_two_sample(a, c).p_value < 1e-6);
    CHECK(irgpucb::kolmogorov_sf(0.0) == doctest::Approx(1.0));
    // Standard table value: Pr(K > 1.36) ~ 0.049.
    CHECK(irgpucb::kolmogorov_sf(1.36) == doctest::Approx(0.0494).epsilon(0.01));
}
