#include "oracles.hpp"

#include <tripeda/error.hpp>
#include <tripeda/rng.hpp>
#include <tripeda/stats.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace tripeda;

namespace {

const std::vector<double> kWelchX{12.1, 14.3, 9.8, 11.0, 15.2, 13.3, 10.7};
const std::vector<double> kWelchY{18.4, 9.1, 22.0, 7.5, 16.8, 25.3};

auto near(double a, double b, double tol) -> bool { return std::abs(a - b) <= tol; }

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("reg_inc_beta: endpoints, symmetry, closed forms") {
    CHECK(reg_inc_beta(2, 3, 0) == 0.0);
    CHECK(reg_inc_beta(2, 3, 1) == 1.0);
    CHECK(near(reg_inc_beta(2, 3, 0.5), 0.6875, 1e-14));
    for (const double a : {0.3, 1.0, 2.5, 7.0, 40.0, 350.0}) {
        CHECK(near(reg_inc_beta(a, a, 0.5), 0.5, 1e-12));
    }
    for (int a = 1; a <= 12; ++a) {
        for (int b = 1; b <= 12; ++b) {
            for (const double x : {0.01, 0.2, 0.5, 0.77, 0.99}) {
                REQUIRE(near(reg_inc_beta(a, b, x), oracle::inc_beta_integer(a, b, x), 1e-12));
                REQUIRE(near(reg_inc_beta(a, b, x), 1.0 - reg_inc_beta(b, a, 1.0 - x), 1e-12));
            }
        }
    }
    for (const double x : {0.1, 0.4, 0.9}) {
        CHECK(near(reg_inc_beta(1, 4.5, x), 1 - std::pow(1 - x, 4.5), 1e-13));
        CHECK(near(reg_inc_beta(3.5, 1, x), std::pow(x, 3.5), 1e-13));
    }
    // scipy.special.betainc
    CHECK(near(reg_inc_beta(2.5, 0.5, 0.3), 0.018927124071945658, 1e-13));
    CHECK(near(reg_inc_beta(10, 20, 0.4), 0.7853183897628262, 1e-13));
    CHECK(near(reg_inc_beta(0.5, 0.5, 0.9), 0.7951672353008665, 1e-13));
    CHECK(near(reg_inc_beta(235, 0.5, 0.98), 0.0020713676969792167, 1e-13));
    CHECK_THROWS_AS(reg_inc_beta(0, 1, 0.5), Error);
    CHECK_THROWS_AS(reg_inc_beta(1, 1, 1.5), Error);
    CHECK_THROWS_AS(reg_inc_beta(1, -1, 0.5), Error);
}

TEST_CASE("t_cdf") {
    for (const double df : {0.5, 1.0, 3.0, 30.0}) {
        CHECK(t_cdf(0, df) == 0.5);
    }
    CHECK(near(t_cdf(1, 1), 0.75, 1e-14));
    for (int i = 0; i < 100; ++i) {
        const double t = -20.0 + 0.4 * i + 0.013;
        REQUIRE(near(t_cdf(t, 1), 0.5 + std::atan(t) / std::numbers::pi, 1e-12));
    }
    CHECK(near(t_cdf(2.0, 5), 0.9490302605850709, 1e-13));
    CHECK(near(t_cdf(-1.3, 2.5), 0.15024339463535397, 1e-13));
    CHECK(near(t_cdf(0.7, 100), 0.7572236967728132, 1e-13));
    for (const double df : {1.0, 4.0, 17.5}) {
        double previous = 0.0;
        for (int i = -50; i <= 50; ++i) {
            const double now = t_cdf(i * 0.3, df);
            REQUIRE(now >= previous);
            previous = now;
        }
    }
    CHECK_THROWS_AS(t_cdf(1, 0), Error);
}

TEST_CASE("two-sided p against numerical integration of the density") {
    for (const double df : {1.0, 2.0, 3.5, 8.0, 25.0, 120.0}) {
        for (const double t : {0.0, 0.25, 1.0, 1.96, 3.0, 6.5}) {
            CAPTURE(df);
            CAPTURE(t);
            REQUIRE(near(t_two_sided_p(t, df), oracle::t_two_sided_by_quadrature(t, df), 1e-9));
            REQUIRE(near(t_two_sided_p(-t, df), t_two_sided_p(t, df), 0.0));
        }
    }
    CHECK(t_two_sided_p(INFINITY, 3) == 0.0);
}

TEST_CASE("F and chi-square tails") {
    CHECK(f_sf(0, 1, 10) == 1.0);
    CHECK(f_sf(INFINITY, 1, 10) == 0.0);
    // F(1, d) is the square of t(d)
    for (const double t : {0.5, 1.7, 3.2}) {
        CHECK(near(f_sf(t * t, 1, 9), t_two_sided_p(t, 9), 1e-13));
    }
    CHECK(chi2_2_sf(0) == 1.0);
    CHECK(near(chi2_2_sf(5.991), std::exp(-5.991 / 2), 1e-15));
    CHECK(near(chi2_2_sf(5.991), 0.05, 1e-4));
}

TEST_CASE("D'Agostino K^2") {
    // scipy.stats.normaltest
    const std::vector<double> s{2.3, 4.1, 3.3, 5.9, 1.2, 3.8, 4.4, 2.9, 3.1, 6.2, 2.2,
                                3.6, 4.8, 3.0, 2.7, 5.1, 3.9, 4.0, 1.9, 3.4, 7.5, 2.8};
    const auto r = dagostino_k2(s);
    CHECK(near(r.statistic, 3.617289548812689, 1e-10));
    CHECK(near(r.p_value, 0.16387607543189367, 1e-10));
    CHECK(r.n == 22);
    CHECK(r.passed_at_05);
    CHECK_THROWS_AS(dagostino_k2(std::vector<double>(19, 1.0)), Error);
    CHECK_THROWS_AS(dagostino_k2(std::vector<double>(25, 1.0)), Error);

    Rng rng(2718);
    std::vector<double> normal(10000);
    for (auto& x : normal) {
        x = rng.normal(0, 1);
    }
    CHECK(dagostino_k2(normal).p_value > 0.001);
    std::vector<double> skewed(2000);
    for (auto& x : skewed) {
        x = std::exp(rng.normal(0, 1));
    }
    CHECK(dagostino_k2(skewed).p_value < 1e-6);
}

TEST_CASE("Levene (median-centred)") {
    // scipy.stats.levene(center="median")
    const auto r = levene(kWelchX, kWelchY);
    CHECK(near(r.statistic, 5.842021692692992, 1e-10));
    CHECK(near(r.p_value, 0.03418639648512279, 1e-10));
    CHECK_FALSE(r.equal_variances_at_05);
    const auto same = levene(kWelchX, kWelchX);
    CHECK(same.statistic == 0.0);
    CHECK(same.p_value == 1.0);
    std::vector<double> scaled_x;
    std::vector<double> scaled_y;
    for (const double v : kWelchX) {
        scaled_x.push_back(v * 4);
    }
    for (const double v : kWelchY) {
        scaled_y.push_back(v * 4);
    }
    CHECK(near(levene(scaled_x, scaled_y).statistic, r.statistic, 1e-10));
    const std::vector<double> flat{5, 5, 5, 5, 5, 5};
    const std::vector<double> wide{-40, 60, -80, 100, 0, 20};
    CHECK(levene(flat, wide).p_value < 0.01);
    CHECK_THROWS_AS(levene(flat, flat), Error);
    CHECK_THROWS_AS(levene(std::vector<double>{1}, wide), Error);
}

TEST_CASE("t-test fixed vectors") {
    const std::vector<double> a{1, 2, 3, 4, 5};
    const std::vector<double> b{2, 3, 4, 5, 6};
    const auto r = ttest_two_sample(a, b, TTestPolicy::Pooled);
    CHECK(r.t == -1.0);
    CHECK(r.df == 8.0);
    CHECK(near(r.p_value, 0.34659350708733416, 1e-12));
    CHECK(near(r.p_value, oracle::t_two_sided_by_quadrature(-1.0, 8.0), 1e-6));
    CHECK(r.method == TTestMethod::Pooled);
    CHECK(r.mean1 == 3.0);
    CHECK(r.var1 == 2.5);
    CHECK_FALSE(r.significant_at_05);
    CHECK_FALSE(r.normality1.has_value());  // n < 20: not assessed

    // scipy.stats.ttest_ind(equal_var=False)
    const auto w = ttest_two_sample(kWelchX, kWelchY, TTestPolicy::Welch);
    CHECK(near(w.t, -1.4063350529704415, 1e-12));
    CHECK(near(w.df, 5.693033893476573, 1e-10));
    CHECK(near(w.p_value, 0.21179294771025794, 1e-10));
    const auto automatic = ttest_two_sample(kWelchX, kWelchY);
    CHECK(automatic.method == TTestMethod::Welch);  // Levene rejects equal variances
    CHECK(automatic.variance_test.has_value());
    CHECK(ttest_two_sample(a, b).method == TTestMethod::Pooled);

    const auto same = ttest_two_sample(a, a);
    CHECK(same.t == 0.0);
    CHECK(same.p_value == 1.0);

    const std::vector<double> c1{4, 4, 4};
    const std::vector<double> c2{6, 6};
    const auto sep = ttest_two_sample(c1, c2);
    CHECK(std::isinf(sep.t));
    CHECK(sep.t < 0);
    CHECK(sep.p_value == 0.0);
    CHECK(sep.significant_at_05);
    CHECK_THROWS_AS(ttest_two_sample(c1, c1), Error);
    CHECK_THROWS_AS(ttest_two_sample(std::vector<double>{1}, a), Error);
}

TEST_CASE("t-test properties (randomized)") {
    std::mt19937_64 gen(77);
    std::normal_distribution<double> nd(10.0, 3.0);
    std::uniform_int_distribution<int> size(3, 60);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> a(size(gen));
        std::vector<double> b(size(gen));
        for (auto& x : a) {
            x = nd(gen);
        }
        for (auto& x : b) {
            x = nd(gen) + (trial % 3);
        }
        for (const auto policy : {TTestPolicy::Pooled, TTestPolicy::Welch, TTestPolicy::Auto}) {
            const auto r = ttest_two_sample(a, b, policy);
            REQUIRE(r.p_value >= 0.0);
            REQUIRE(r.p_value <= 1.0);
            REQUIRE(r.df > 0.0);
            REQUIRE((r.t < 0) == (r.mean1 < r.mean2));
            REQUIRE(r.significant_at_05 == (r.p_value < 0.05));

            const auto swapped = ttest_two_sample(b, a, policy);
            REQUIRE(swapped.t == -r.t);
            REQUIRE(swapped.p_value == r.p_value);

            std::vector<double> as = a;
            std::vector<double> bs = b;
            std::vector<double> am = a;
            std::vector<double> bm = b;
            for (auto& x : as) x += 1000.0;
            for (auto& x : bs) x += 1000.0;
            for (auto& x : am) x *= 8.0;
            for (auto& x : bm) x *= 8.0;
            const auto shifted = ttest_two_sample(as, bs, policy);
            const auto scaled = ttest_two_sample(am, bm, policy);
            REQUIRE(oracle::close(shifted.t, r.t, 1e-10));
            REQUIRE(oracle::close(shifted.df, r.df, 1e-10));
            REQUIRE(oracle::close(shifted.p_value, r.p_value, 1e-10));
            REQUIRE(oracle::close(scaled.t, r.t, 1e-12));
            REQUIRE(oracle::close(scaled.p_value, r.p_value, 1e-12));
        }
    }
}

TEST_CASE("Welch equals Pooled when sizes and variances match") {
    const std::vector<double> a{1, 2, 3, 4, 5, 6};
    const std::vector<double> b{3.5, 4.5, 5.5, 6.5, 7.5, 8.5};
    const auto p = ttest_two_sample(a, b, TTestPolicy::Pooled);
    const auto w = ttest_two_sample(a, b, TTestPolicy::Welch);
    CHECK(oracle::close(w.t, p.t, 1e-12));
    CHECK(oracle::close(w.df, p.df, 1e-12));
    CHECK(oracle::close(w.p_value, p.p_value, 1e-12));
}

}
