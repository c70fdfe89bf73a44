#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace tripeda {

inline constexpr double kSignificanceLevel = 0.05;

/// Regularized incomplete beta I_x(a, b), by continued fraction (modified
/// Lentz) with I_x(a,b) = 1 - I_{1-x}(b,a) once x > (a+1)/(a+b+2).
auto reg_inc_beta(double a, double b, double x) -> double;

/// Student-t CDF: with x = df/(df+t^2), tail = I_x(df/2, 1/2)/2.
auto t_cdf(double t, double df) -> double;
/// 2 * (1 - t_cdf(|t|, df)), evaluated without the cancellation.
auto t_two_sided_p(double t, double df) -> double;
/// Upper tail of F(d1, d2).
auto f_sf(double f, double d1, double d2) -> double;
/// Upper tail of chi-square with two degrees of freedom: exp(-x/2).
auto chi2_2_sf(double x) -> double;

struct NormalityResult {
    double statistic = 0.0;  // K^2
    double p_value = 1.0;
    std::size_t n = 0;
    bool passed_at_05 = true;
};

/// D'Agostino-Pearson K^2 omnibus test. Needs n >= 20.
auto dagostino_k2(std::span<const double> sample) -> NormalityResult;

struct VarianceTestResult {
    double statistic = 0.0;  // W
    double p_value = 1.0;
    bool equal_variances_at_05 = true;
};

/// Brown-Forsythe flavour of Levene's test (absolute deviations from group
/// medians), p from F(1, n1+n2-2).
auto levene(std::span<const double> a, std::span<const double> b) -> VarianceTestResult;

enum class TTestPolicy { Auto, Pooled, Welch };
enum class TTestMethod { Pooled, Welch };

auto to_string(TTestMethod method) -> std::string_view;

struct TTestResult {
    double t = 0.0;
    double df = 0.0;
    double p_value = 1.0;
    TTestMethod method = TTestMethod::Pooled;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    double mean1 = 0.0;
    double mean2 = 0.0;
    double var1 = 0.0;
    double var2 = 0.0;
    // nullopt means "not assessed" (sample too small or without dispersion).
    std::optional<NormalityResult> normality1;
    std::optional<NormalityResult> normality2;
    std::optional<VarianceTestResult> variance_test;
    bool significant_at_05 = false;
};

/// Two-sided two-sample t-test. Auto runs the variance test first and picks
/// Pooled when variances look equal, Welch otherwise.
auto ttest_two_sample(std::span<const double> a, std::span<const double> b,
                      TTestPolicy policy = TTestPolicy::Auto) -> TTestResult;

}  // namespace tripeda
