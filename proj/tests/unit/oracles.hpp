#pragma once

// Direct-definition reference implementations. Deliberately naive: they sort
// copies, sum in long double and share no code with the library.

#include <tripeda/frame.hpp>

#include <boost/math/quadrature/exp_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

inline auto present(const tripeda::Column& column) -> std::vector<double> {
    std::vector<double> out;
    for (const auto& v : column.values) {
        if (const auto* i = std::get_if<std::int64_t>(&v)) {
            out.push_back(static_cast<double>(*i));
        } else if (const auto* d = std::get_if<double>(&v)) {
            out.push_back(*d);
        }
    }
    return out;
}

inline auto mean(const std::vector<double>& xs) -> double {
    long double sum = 0;
    for (const double x : xs) {
        sum += x;
    }
    return static_cast<double>(sum / static_cast<long double>(xs.size()));
}

// Textbook one-pass formula; exact for the small dyadic test data.
inline auto sample_std(const std::vector<double>& xs) -> double {
    long double s = 0;
    long double ss = 0;
    for (const double x : xs) {
        s += x;
        ss += static_cast<long double>(x) * x;
    }
    const auto n = static_cast<long double>(xs.size());
    return static_cast<double>(std::sqrt((ss - s * s / n) / (n - 1)));
}

// Hyndman-Fan type 7 with 1-based order statistics.
inline auto percentile(std::vector<double> xs, double p) -> double {
    std::sort(xs.begin(), xs.end());
    const double h = 1.0 + (static_cast<double>(xs.size()) - 1.0) * p / 100.0;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, xs.size());
    return xs[lo - 1] + (h - static_cast<double>(lo)) * (xs[hi - 1] - xs[lo - 1]);
}

struct Box {
    double q1, median, q3, whisker_low, whisker_high;
    std::vector<std::size_t> outliers;
};

inline auto box(const tripeda::Column& column) -> Box {
    const auto xs = present(column);
    Box b{percentile(xs, 25), percentile(xs, 50), percentile(xs, 75), 0, 0, {}};
    const double lo = b.q1 - 1.5 * (b.q3 - b.q1);
    const double hi = b.q3 + 1.5 * (b.q3 - b.q1);
    std::vector<double> inside;
    for (std::size_t row = 0; row < column.values.size(); ++row) {
        const auto& v = column.values[row];
        if (std::holds_alternative<tripeda::Missing>(v)) {
            continue;
        }
        const double x = std::holds_alternative<double>(v)
                             ? std::get<double>(v)
                             : static_cast<double>(std::get<std::int64_t>(v));
        if (x < lo || x > hi) {
            b.outliers.push_back(row);
        } else {
            inside.push_back(x);
        }
    }
    std::sort(inside.begin(), inside.end());
    b.whisker_low = inside.front();
    b.whisker_high = inside.back();
    return b;
}

struct GroupRow {
    std::string key;
    std::size_t count;
    double mean;
};

inline auto group_means(const std::vector<std::optional<std::string>>& keys,
                        const std::vector<std::optional<double>>& values) -> std::vector<GroupRow> {
    std::vector<std::string> order;
    std::map<std::string, std::pair<long double, std::size_t>> acc;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (!keys[i] || !values[i]) {
            continue;
        }
        if (!acc.contains(*keys[i])) {
            order.push_back(*keys[i]);
        }
        auto& [sum, count] = acc[*keys[i]];
        sum += *values[i];
        ++count;
    }
    std::vector<GroupRow> out;
    for (const auto& key : order) {
        const auto& [sum, count] = acc[key];
        out.push_back({key, count, static_cast<double>(sum / static_cast<long double>(count))});
    }
    return out;
}

// Pearson r from raw sums.
inline auto pearson(const std::vector<double>& xs, const std::vector<double>& ys) -> double {
    long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += static_cast<long double>(xs[i]) * xs[i];
        syy += static_cast<long double>(ys[i]) * ys[i];
        sxy += static_cast<long double>(xs[i]) * ys[i];
    }
    const auto n = static_cast<long double>(xs.size());
    const auto num = n * sxy - sx * sy;
    const auto den = std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
    return static_cast<double>(num / den);
}

// Two-sided Student-t tail by integrating the density.
inline auto t_two_sided_by_quadrature(double t, double df) -> double {
    const double log_c = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) -
                         0.5 * std::log(df * std::numbers::pi);
    auto density = [&](double x) {
        return std::exp(log_c - (df + 1) / 2 * std::log1p(x * x / df));
    };
    boost::math::quadrature::exp_sinh<double> integrator;
    const double a = std::abs(t);
    return 2.0 * integrator.integrate([&](double u) { return density(a + u); });
}

// I_x(a, b) for positive integers a, b as a binomial tail.
inline auto inc_beta_integer(int a, int b, double x) -> double {
    const int n = a + b - 1;
    long double total = 0;
    for (int j = a; j <= n; ++j) {
        const long double log_binom =
            std::lgamma(n + 1.0L) - std::lgamma(j + 1.0L) - std::lgamma(n - j + 1.0L);
        total += std::exp(log_binom) * std::pow(static_cast<long double>(x), j) *
                 std::pow(1.0L - x, n - j);
    }
    return static_cast<double>(total);
}

inline auto close(double actual, double expected, double rel) -> bool {
    if (std::isnan(actual) || std::isnan(expected)) {
        return false;
    }
    return std::abs(actual - expected) <= rel * std::max(1.0, std::abs(expected));
}

}  // namespace oracle
