#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "povline/empirical.hpp"
#include "povline/errors.hpp"
#include "povline/line.hpp"
#include "povline/measures.hpp"
#include "povline/rng.hpp"
#include "povline/testing.hpp"

using namespace povline;

namespace {

sample draw(unsigned seed, std::size_t n, double scale) {
    rng_stream rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = -scale * std::log(rng.uniform01());
    return sample::from_values(v);
}

}  // namespace

TEST_CASE("comparing a sample with itself") {
    const auto s = draw(1, 80, 2.0);
    const auto line = line_spec::parse("mean:1");
    const auto r = proportionality_test(s, s, measure::sen(), 1.0, line, line);
    CHECK(r.kind == "proportionality");
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == 1.0);
    CHECK_FALSE(r.reject_at_10);
    CHECK_FALSE(r.reject_at_05);
    CHECK_FALSE(r.reject_at_01);
    CHECK(r.estimate_f[0] == r.estimate_g[0]);
    CHECK(r.variance_f[0] == r.variance_g[0]);
    CHECK(r.pooled[0] > 0.0);
}

TEST_CASE("statistic flips sign when the samples swap") {
    const auto f = draw(2, 60, 2.0);
    const auto g = draw(3, 90, 2.5);
    const auto line = line_spec::parse("median:1");
    const auto fg = proportionality_test(f, g, measure::fgt(1), 1.0, line, line);
    const auto gf = proportionality_test(g, f, measure::fgt(1), 1.0, line, line);
    CHECK(fg.statistic == -gf.statistic);
    CHECK(fg.p_value == gf.p_value);
}

TEST_CASE("proportionality coefficient scales the second index") {
    const auto f = draw(4, 70, 2.0);
    const auto g = draw(5, 70, 2.0);
    const auto line = line_spec::parse("mean:1");
    const auto r = proportionality_test(f, g, measure::sen(), 2.0, line, line);
    const double pooled =
        r.variance_f[0] / 70.0 + 4.0 * r.variance_g[0] / 70.0;
    CHECK(r.statistic ==
          doctest::Approx((r.estimate_f[0] - 2.0 * r.estimate_g[0]) /
                          std::sqrt(pooled))
              .epsilon(1e-14));
    CHECK(r.p_value >= 0.0);
    CHECK(r.p_value <= 1.0);
    CHECK_THROWS_AS((void)proportionality_test(f, g, measure::sen(), -1.0,
                                               line, line),
                    validation_error);
}

TEST_CASE("zero-variance samples cannot be standardized") {
    const auto rich = sample::from_values({5.0, 6.0, 7.0, 8.0});
    const auto g = draw(6, 40, 2.0);
    const auto below_everyone = line_spec::parse("fixed:1");
    CHECK_THROWS_AS((void)proportionality_test(rich, g, measure::sen(), 1.0,
                                               below_everyone, below_everyone),
                    degenerate_error);
}

TEST_CASE("different line rules per sample") {
    const auto f = draw(7, 50, 2.0);
    const auto g = draw(8, 50, 2.0);
    const auto r = proportionality_test(f, g, measure::fgt(1), 1.0,
                                        line_spec::parse("mean:0.8"),
                                        line_spec::parse("fixed:2"));
    CHECK(std::isfinite(r.statistic));
    CHECK(r.p_value > 0.0);
}

TEST_CASE("joint test of a sample against itself") {
    const auto s = draw(9, 100, 2.0);
    const std::vector<measure> ms = {measure::fgt(1), measure::sen(),
                                     measure::watts()};
    const auto r = wald_test(s, s, ms, {1.0, 1.0, 1.0},
                             line_spec::parse("mean:1"),
                             line_spec::parse("mean:1"));
    CHECK(r.kind == "wald");
    CHECK(r.df == 3);
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == 1.0);
    CHECK(r.pooled.size() == 9);
}

TEST_CASE("joint statistic is nonnegative and has a valid p-value") {
    const std::vector<measure> ms = {measure::fgt(0), measure::fgt(1),
                                     measure::sen()};
    for (unsigned seed = 10; seed < 30; ++seed) {
        const auto f = draw(seed, 60, 2.0);
        const auto g = draw(seed + 100, 80, 2.2);
        const auto r = wald_test(f, g, ms, {1.0, 1.0, 1.0},
                                 line_spec::parse("median:1"),
                                 line_spec::parse("median:1"));
        CHECK(r.statistic >= 0.0);
        CHECK(r.p_value >= 0.0);
        CHECK(r.p_value <= 1.0);
    }
}

TEST_CASE("joint statistic ignores the measure ordering") {
    const auto f = draw(31, 70, 2.0);
    const auto g = draw(32, 90, 2.4);
    const auto line = line_spec::parse("mean:1");
    const auto ab = wald_test(f, g, {measure::fgt(1), measure::sen()},
                              {1.0, 2.0}, line, line);
    const auto ba = wald_test(f, g, {measure::sen(), measure::fgt(1)},
                              {2.0, 1.0}, line, line);
    CHECK(ab.statistic == doctest::Approx(ba.statistic).epsilon(1e-9));
    CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-9));
}

TEST_CASE("duplicated measures make the pooled matrix singular") {
    const auto f = draw(33, 50, 2.0);
    const auto g = draw(34, 50, 2.0);
    try {
        (void)wald_test(f, g, {measure::fgt(1), measure::fgt(1)}, {1.0, 1.0},
                        line_spec::parse("mean:1"), line_spec::parse("mean:1"));
        FAIL("expected a singular pooled matrix");
    } catch (const degenerate_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("singular") != std::string::npos);
        CHECK(msg.find("fgt:1 and fgt:1") != std::string::npos);
    }
}

TEST_CASE("joint test input validation") {
    const auto f = draw(35, 40, 2.0);
    const auto g = draw(36, 40, 2.0);
    const auto line = line_spec::parse("mean:1");
    CHECK_THROWS_AS((void)wald_test(f, g, {}, {}, line, line),
                    validation_error);
    CHECK_THROWS_AS((void)wald_test(f, g, {measure::sen()}, {1.0, 2.0}, line,
                                    line),
                    validation_error);
    CHECK_THROWS_AS((void)wald_test(f, g, {measure::sen()}, {0.0}, line, line),
                    validation_error);
    CHECK_THROWS_AS((void)wald_test(f, g, {measure::sen()}, {-1.0}, line,
                                    line),
                    validation_error);
}

TEST_CASE("rejection flags are nested") {
    // far-apart distributions: tiny p, all three thresholds reject
    const auto f = draw(37, 400, 1.0);
    const auto g = draw(38, 400, 6.0);
    const auto r = proportionality_test(f, g, measure::fgt(1), 1.0,
                                        line_spec::parse("fixed:2"),
                                        line_spec::parse("fixed:2"));
    CHECK(r.reject_at_01);
    CHECK(r.reject_at_05);
    CHECK(r.reject_at_10);
    CHECK(r.p_value < 0.01);

    // flags must always be monotone in the level
    for (unsigned seed = 40; seed < 60; ++seed) {
        const auto a = draw(seed, 50, 2.0);
        const auto b = draw(seed + 200, 50, 2.0);
        const auto t = proportionality_test(a, b, measure::sen(), 1.0,
                                            line_spec::parse("mean:1"),
                                            line_spec::parse("mean:1"));
        if (t.reject_at_01) CHECK(t.reject_at_05);
        if (t.reject_at_05) CHECK(t.reject_at_10);
    }
}

TEST_CASE("large separations reject jointly") {
    const auto f = draw(61, 500, 1.0);
    const auto g = draw(62, 500, 5.0);
    const auto r = wald_test(f, g, {measure::fgt(0), measure::fgt(1)},
                             {1.0, 1.0}, line_spec::parse("fixed:2"),
                             line_spec::parse("fixed:2"));
    CHECK(r.statistic > 20.0);
    CHECK(r.p_value < 1e-4);
}
