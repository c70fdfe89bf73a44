#include <tripeda/eda.hpp>
#include <tripeda/error.hpp>
#include <tripeda/stats.hpp>

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace tripeda {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kEps = 1e-15;
constexpr int kMaxIterations = 100000;

// Continued fraction for I_x(a,b), modified Lentz.
auto beta_continued_fraction(double a, double b, double x) -> double {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) {
        d = kTiny;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double md = m;
        const double m2 = 2.0 * md;
        double aa = md * (b - md) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + md) * (qab + md) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) {
            return h;
        }
    }
    throw Error(fmt::format("incomplete beta continued fraction did not converge (a={}, b={}, "
                            "x={})",
                            a, b, x));
}

struct Moments {
    double mean = 0.0;
    double var = 0.0;  // sample, n-1
};

auto moments(std::span<const double> xs) -> Moments {
    double sum = 0.0;
    for (const double x : xs) {
        sum += x;
    }
    const double mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (const double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return {mean, ss / static_cast<double>(xs.size() - 1)};
}

auto skew_z(double b1, double n) -> double {
    double y = b1 * std::sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)));
    const double beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0) /
                         ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
    const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
    const double delta = 1.0 / std::sqrt(0.5 * std::log(w2));
    const double alpha = std::sqrt(2.0 / (w2 - 1.0));
    if (y == 0.0) {
        y = 1.0;
    }
    const double r = y / alpha;
    return delta * std::log(r + std::sqrt(r * r + 1.0));
}

auto kurtosis_z(double b2, double n) -> double {
    const double expected = 3.0 * (n - 1.0) / (n + 1.0);
    const double variance = 24.0 * n * (n - 2.0) * (n - 3.0) /
                            ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
    const double x = (b2 - expected) / std::sqrt(variance);
    const double sqrt_beta1 = 6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0)) *
                              std::sqrt(6.0 * (n + 3.0) * (n + 5.0) /
                                        (n * (n - 2.0) * (n - 3.0)));
    const double a = 6.0 + 8.0 / sqrt_beta1 *
                               (2.0 / sqrt_beta1 + std::sqrt(1.0 + 4.0 / (sqrt_beta1 * sqrt_beta1)));
    const double term1 = 1.0 - 2.0 / (9.0 * a);
    const double denom = 1.0 + x * std::sqrt(2.0 / (a - 4.0));
    const double term2 =
        std::copysign(std::cbrt((1.0 - 2.0 / a) / std::fabs(denom)), denom);
    return (term1 - term2) / std::sqrt(2.0 / (9.0 * a));
}

auto median_deviations(std::span<const double> xs) -> std::vector<double> {
    const double median = percentile(xs, 50.0);
    std::vector<double> out;
    out.reserve(xs.size());
    for (const double x : xs) {
        out.push_back(std::fabs(x - median));
    }
    return out;
}

}  // namespace

auto reg_inc_beta(double a, double b, double x) -> double {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b) ||
        !(x >= 0.0 && x <= 1.0)) {
        throw Error(fmt::format("incomplete beta requires a > 0, b > 0, 0 <= x <= 1 (got a={}, "
                                "b={}, x={})",
                                a, b, x));
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (x == 1.0) {
        return 1.0;
    }
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    double result = 0.0;
    if (x > (a + 1.0) / (a + b + 2.0)) {
        result = 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
    } else {
        result = front * beta_continued_fraction(a, b, x) / a;
    }
    return std::clamp(result, 0.0, 1.0);
}

auto t_cdf(double t, double df) -> double {
    if (!(df > 0.0)) {
        throw Error(fmt::format("t distribution needs df > 0, got {}", df));
    }
    if (std::isnan(t)) {
        throw Error("t_cdf of NaN");
    }
    const double tail = 0.5 * reg_inc_beta(df / 2.0, 0.5, df / (df + t * t));
    return t >= 0.0 ? 1.0 - tail : tail;
}

auto t_two_sided_p(double t, double df) -> double {
    if (!(df > 0.0)) {
        throw Error(fmt::format("t distribution needs df > 0, got {}", df));
    }
    if (std::isinf(t)) {
        return 0.0;
    }
    return reg_inc_beta(df / 2.0, 0.5, df / (df + t * t));
}

auto f_sf(double f, double d1, double d2) -> double {
    if (!(d1 > 0.0) || !(d2 > 0.0)) {
        throw Error("F distribution needs positive degrees of freedom");
    }
    if (f <= 0.0) {
        return 1.0;
    }
    if (std::isinf(f)) {
        return 0.0;
    }
    return reg_inc_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

auto chi2_2_sf(double x) -> double {
    return x <= 0.0 ? 1.0 : std::exp(-x / 2.0);
}

auto dagostino_k2(std::span<const double> sample) -> NormalityResult {
    const auto count = sample.size();
    if (count < 20) {
        throw Error(fmt::format("normality test needs at least 20 observations, got {}", count));
    }
    const double n = static_cast<double>(count);
    double sum = 0.0;
    for (const double x : sample) {
        sum += x;
    }
    const double mean = sum / n;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (const double x : sample) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (!(m2 > 0.0)) {
        throw Error("normality test: sample has no dispersion");
    }
    const double skewness = m3 / std::pow(m2, 1.5);
    const double kurtosis = m4 / (m2 * m2);
    const double zs = skew_z(skewness, n);
    const double zk = kurtosis_z(kurtosis, n);
    NormalityResult out;
    out.statistic = zs * zs + zk * zk;
    out.p_value = chi2_2_sf(out.statistic);
    out.n = count;
    out.passed_at_05 = out.p_value >= kSignificanceLevel;
    return out;
}

auto levene(std::span<const double> a, std::span<const double> b) -> VarianceTestResult {
    if (a.size() < 2 || b.size() < 2) {
        throw Error("variance test needs at least 2 observations per group");
    }
    const auto za = median_deviations(a);
    const auto zb = median_deviations(b);
    auto sum_of = [](const std::vector<double>& v) {
        double s = 0.0;
        for (const double x : v) {
            s += x;
        }
        return s;
    };
    const double sum_a = sum_of(za);
    const double sum_b = sum_of(zb);
    if (sum_a == 0.0 && sum_b == 0.0) {
        throw Error("variance test: degenerate samples (no deviation from the median in either "
                    "group)");
    }
    const double na = static_cast<double>(za.size());
    const double nb = static_cast<double>(zb.size());
    const double mean_a = sum_a / na;
    const double mean_b = sum_b / nb;
    const double grand = (sum_a + sum_b) / (na + nb);
    const double between =
        na * (mean_a - grand) * (mean_a - grand) + nb * (mean_b - grand) * (mean_b - grand);
    double within = 0.0;
    for (const double z : za) {
        within += (z - mean_a) * (z - mean_a);
    }
    for (const double z : zb) {
        within += (z - mean_b) * (z - mean_b);
    }
    const double d2 = na + nb - 2.0;
    VarianceTestResult out;
    if (between == 0.0) {
        out.statistic = 0.0;
    } else if (within == 0.0) {
        out.statistic = std::numeric_limits<double>::infinity();
    } else {
        out.statistic = d2 * between / within;
    }
    out.p_value = f_sf(out.statistic, 1.0, d2);
    out.equal_variances_at_05 = out.p_value >= kSignificanceLevel;
    return out;
}

auto to_string(TTestMethod method) -> std::string_view {
    return method == TTestMethod::Pooled ? "pooled" : "welch";
}

auto ttest_two_sample(std::span<const double> a, std::span<const double> b, TTestPolicy policy)
    -> TTestResult {
    if (a.size() < 2 || b.size() < 2) {
        throw Error(fmt::format("t-test needs at least 2 observations per group (got {} and {})",
                                a.size(), b.size()));
    }
    const auto ma = moments(a);
    const auto mb = moments(b);
    TTestResult out;
    out.n1 = a.size();
    out.n2 = b.size();
    out.mean1 = ma.mean;
    out.mean2 = mb.mean;
    out.var1 = ma.var;
    out.var2 = mb.var;

    auto assess = [](std::span<const double> xs) -> std::optional<NormalityResult> {
        if (xs.size() < 20) {
            return std::nullopt;
        }
        try {
            return dagostino_k2(xs);
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    out.normality1 = assess(a);
    out.normality2 = assess(b);

    const double n1 = static_cast<double>(out.n1);
    const double n2 = static_cast<double>(out.n2);
    const double diff = ma.mean - mb.mean;

    if (ma.var == 0.0 && mb.var == 0.0) {
        if (diff == 0.0) {
            throw Error("t-test: no variation (both samples constant and equal)");
        }
        out.method = TTestMethod::Pooled;
        out.df = n1 + n2 - 2.0;
        out.t = std::copysign(std::numeric_limits<double>::infinity(), diff);
        out.p_value = 0.0;
        out.significant_at_05 = true;
        return out;
    }

    out.variance_test = levene(a, b);
    switch (policy) {
        case TTestPolicy::Pooled: out.method = TTestMethod::Pooled; break;
        case TTestPolicy::Welch: out.method = TTestMethod::Welch; break;
        case TTestPolicy::Auto:
            out.method = out.variance_test->equal_variances_at_05 ? TTestMethod::Pooled
                                                                  : TTestMethod::Welch;
            break;
    }

    if (out.method == TTestMethod::Pooled) {
        const double pooled = ((n1 - 1.0) * ma.var + (n2 - 1.0) * mb.var) / (n1 + n2 - 2.0);
        out.df = n1 + n2 - 2.0;
        out.t = diff / std::sqrt(pooled * (1.0 / n1 + 1.0 / n2));
    } else {
        const double sa = ma.var / n1;
        const double sb = mb.var / n2;
        out.df = (sa + sb) * (sa + sb) / (sa * sa / (n1 - 1.0) + sb * sb / (n2 - 1.0));
        out.t = diff / std::sqrt(sa + sb);
    }
    out.p_value = t_two_sided_p(out.t, out.df);
    out.significant_at_05 = out.p_value < kSignificanceLevel;
    return out;
}

}  // namespace tripeda
