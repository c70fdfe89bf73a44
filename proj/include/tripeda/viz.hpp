#pragma once

#include <tripeda/cleaning.hpp>
#include <tripeda/eda.hpp>

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tripeda {

struct Margins {
    double top = 50.0;
    double right = 30.0;
    double bottom = 70.0;
    double left = 80.0;
};

struct PlotSpec {
    double width_px = 800.0;
    double height_px = 600.0;
    std::string title;
    Margins margins;
    std::vector<std::string> palette{"#4C72B0", "#DD8452", "#55A868", "#C44E52",
                                     "#8172B3", "#937860", "#DA8BC3", "#8C8C8C"};
    // Value axis range. When absent the axis is fitted to the data.
    std::optional<std::pair<double, double>> value_range;

    /// Throws on non-positive dimensions or margins of half a dimension or more.
    void validate() const;
    auto plot_left() const -> double { return margins.left; }
    auto plot_right() const -> double { return width_px - margins.right; }
    auto plot_top() const -> double { return margins.top; }
    auto plot_bottom() const -> double { return height_px - margins.bottom; }
};

// Heatmap colour ramp: kRampLow at -1, white at 0, kRampHigh at +1.
inline constexpr const char* kRampLow = "#3B4CC0";
inline constexpr const char* kRampHigh = "#B40426";

struct SvgDocument {
    std::string text;

    void save(const std::filesystem::path& path) const;
};

/// Maps a value interval onto pixel rows, larger values higher up.
struct LinearScale {
    double domain_low = 0.0;
    double domain_high = 1.0;
    double pixel_low = 0.0;   // pixel row of domain_low
    double pixel_high = 0.0;  // pixel row of domain_high

    auto operator()(double v) const -> double {
        return pixel_low + (v - domain_low) / (domain_high - domain_low) * (pixel_high - pixel_low);
    }
};

/// Tick step of 1, 2 or 5 times a power of ten giving roughly `target` ticks.
auto nice_step(double span, int target = 5) -> double;
/// Ticks covering [low, high], extended outward to step multiples.
auto nice_ticks(double low, double high, int target = 5) -> std::vector<double>;

/// Value scale used by render_boxplot: whiskers and outliers padded by 5% of
/// their span on each side.
auto boxplot_scale(const BoxplotStats& stats, std::span<const double> outlier_values,
                   const PlotSpec& spec) -> LinearScale;
/// Value scale used by render_bar: the fixed range if given, else [min(0,
/// means), max(0, means)] widened to nice ticks.
auto bar_scale(const GroupedStats& groups, const PlotSpec& spec) -> LinearScale;

auto render_boxplot(const BoxplotStats& stats, std::span<const double> outlier_values,
                    const PlotSpec& spec = {}) -> SvgDocument;
auto render_bar(const GroupedStats& groups, const PlotSpec& spec = {}) -> SvgDocument;
auto render_heatmap(std::span<const double> matrix, std::span<const std::string> labels,
                    const PlotSpec& spec = {}) -> SvgDocument;
auto render_heatmap(const CorrelationMatrix& matrix, const PlotSpec& spec = {}) -> SvgDocument;

/// Ramp colour for a value in [-1, 1] as `#RRGGBB`.
auto heatmap_color(double value) -> std::string;

}  // namespace tripeda
