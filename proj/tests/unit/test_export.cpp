#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "irgpucb/errors.hpp"
#include "irgpucb/export.hpp"

using namespace irgpucb;

namespace {

int count(const std::string& s, const std::string& needle) {
    int n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

RegretTrace sample_trace() {
    RegretTrace t;
    t.trial = 3;
    double cr = 0.0;
    for (int i = 1; i <= 4; ++i) {
        TraceRow r;
        r.iter = i;
        r.x = Eigen::Vector2d(0.1 * i, 1.0 / 3.0);
        r.y = std::sqrt(2.0) * i;
        if (i % 2) r.zeta = 14.0 + 1.0 / 7.0;
        r.simple_regret = 1.0 / (i + 2.0);
        cr += r.simple_regret;
        r.cumulative_regret = cr;
        t.rows.push_back(r);
    }
    return t;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e300, 0.0, 123456789.123456789}) CHECK(parse_number(format_number(v)) == v);
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(std::isnan(parse_number(format_number(std::nan("")))));
    CHECK_THROWS_AS(parse_number("1.5x"), InputError);
    CHECK_THROWS_AS(parse_number(""), InputError);
}

TEST_CASE("empty trace gives a header-only CSV") {
    std::ostringstream out;
    write_trace_csv(out, {});
    CHECK(out.str() == std::string(kTraceHeader) + "\n");
    std::ostringstream agg;
    write_aggregate_csv(agg, {});
    CHECK(agg.str() == std::string(kAggregateHeader) + "\n");
}

TEST_CASE("trace CSV round trip is exact") {
    const auto t = sample_trace();
    std::ostringstream out;
    write_trace_csv(out, {t});
    std::istringstream in(out.str());
    const auto back = read_trace_csv(in);
    REQUIRE(back.size() == 1);
    REQUIRE(back[0].rows.size() == t.rows.size());
    CHECK(back[0].trial == 3);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& a = t.rows[i];
        const auto& b = back[0].rows[i];
        CHECK(a.iter == b.iter);
        CHECK(a.x == b.x);
        CHECK(a.y == b.y);
        CHECK(a.zeta == b.zeta);
        CHECK(a.simple_regret == b.simple_regret);
        CHECK(a.cumulative_regret == b.cumulative_regret);
    }
    std::ostringstream again;
    write_trace_csv(again, back);
    CHECK(again.str() == out.str());

    std::istringstream bad("trial,iter\n1,2\n");
    CHECK_THROWS_AS(read_trace_csv(bad), InputError);
}

TEST_CASE("SVG has one polyline per series") {
    std::vector<Series> s{{"ucb:gamma", {1, 2, 3}, {1.0, 0.1, 0.0}}, {"ei", {1, 2, 3}, {2.0, 1.0, 0.5}},
                          {"a<b&c", {1}, {1.0}}};
    std::ostringstream out;
    write_svg(out, "regret", "simple regret", s, true);
    const auto svg = out.str();
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(count(svg, "<polyline") == 3);
    CHECK(count(svg, "<svg") == 1);
    CHECK(count(svg, "</svg>") == 1);
    CHECK(svg.find("a&lt;b&amp;c") != std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
    CHECK(count(svg, "<text") == count(svg, "</text>"));
}

TEST_CASE("unwritable path is an I/O error") {
    CHECK_THROWS_AS(write_file("/nonexistent-dir/sub/file.csv", "x"), IoError);
}
