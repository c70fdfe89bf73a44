#include <tripeda/error.hpp>
#include <tripeda/viz.hpp>

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace tripeda {

namespace {

constexpr std::string_view kFont = "font-family=\"sans-serif\"";

// Fixed two-decimal coordinates; never prints "-0.00".
auto px(double v) -> std::string {
    auto s = fmt::format("{:.2f}", v);
    if (s == "-0.00") {
        s = "0.00";
    }
    return s;
}

auto escape_xml(std::string_view text) -> std::string {
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

auto tick_label(double v) -> std::string {
    if (std::fabs(v) < 1e-12) {
        v = 0.0;
    }
    auto s = fmt::format("{:.6g}", v);
    return s;
}

class SvgBuilder {
public:
    explicit SvgBuilder(const PlotSpec& spec) : spec_(spec) {
        out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out_ += fmt::format(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
            "viewBox=\"0 0 {0} {1}\">\n",
            px(spec.width_px), px(spec.height_px));
        out_ += fmt::format(
            "<rect class=\"background\" x=\"0.00\" y=\"0.00\" width=\"{}\" height=\"{}\" "
            "fill=\"#FFFFFF\"/>\n",
            px(spec.width_px), px(spec.height_px));
        if (!spec.title.empty()) {
            text("title", spec.width_px / 2.0, spec.margins.top / 2.0, spec.title, "middle", 16);
        }
    }

    void rect(std::string_view cls, double x, double y, double w, double h, std::string_view fill,
              std::string_view stroke = "none") {
        out_ += fmt::format(
            "<rect class=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" "
            "stroke=\"{}\"/>\n",
            cls, px(x), px(y), px(w), px(h), fill, stroke);
    }

    void line(std::string_view cls, double x1, double y1, double x2, double y2,
              std::string_view stroke = "#333333", double width = 1.0) {
        out_ += fmt::format(
            "<line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" "
            "stroke-width=\"{}\"/>\n",
            cls, px(x1), px(y1), px(x2), px(y2), stroke, px(width));
    }

    void circle(std::string_view cls, double cx, double cy, double r) {
        out_ += fmt::format(
            "<circle class=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#C44E52\" "
            "stroke-width=\"1.50\"/>\n",
            cls, px(cx), px(cy), px(r));
    }

    void text(std::string_view cls, double x, double y, std::string_view content,
              std::string_view anchor = "middle", int size = 12) {
        out_ += fmt::format(
            "<text class=\"{}\" x=\"{}\" y=\"{}\" text-anchor=\"{}\" dominant-baseline=\"middle\" "
            "{} font-size=\"{}\">{}</text>\n",
            cls, px(x), px(y), anchor, kFont, size, escape_xml(content));
    }

    // Horizontal grid ticks and labels for a vertical value axis.
    void value_axis(const LinearScale& scale) {
        const double low = std::min(scale.domain_low, scale.domain_high);
        const double high = std::max(scale.domain_low, scale.domain_high);
        line("axis", spec_.plot_left(), spec_.plot_top(), spec_.plot_left(), spec_.plot_bottom());
        for (const double tick : nice_ticks(low, high)) {
            if (tick < low - 1e-9 * (high - low) || tick > high + 1e-9 * (high - low)) {
                continue;
            }
            const double y = scale(tick);
            line("tick", spec_.plot_left() - 5.0, y, spec_.plot_left(), y);
            line("grid", spec_.plot_left(), y, spec_.plot_right(), y, "#E5E5E5");
            text("tick-label", spec_.plot_left() - 8.0, y, tick_label(tick), "end", 11);
        }
    }

    auto finish() -> SvgDocument {
        out_ += "</svg>\n";
        return SvgDocument{std::move(out_)};
    }

private:
    const PlotSpec& spec_;
    std::string out_;
};

auto parse_hex(std::string_view color) -> std::array<int, 3> {
    std::array<int, 3> rgb{};
    for (std::size_t i = 0; i < 3; ++i) {
        rgb[i] = std::stoi(std::string(color.substr(1 + 2 * i, 2)), nullptr, 16);
    }
    return rgb;
}

}  // namespace

void PlotSpec::validate() const {
    if (!(width_px > 0.0) || !(height_px > 0.0)) {
        throw Error("plot dimensions must be positive");
    }
    if (!(margins.left >= 0.0 && margins.left < width_px / 2.0) ||
        !(margins.right >= 0.0 && margins.right < width_px / 2.0) ||
        !(margins.top >= 0.0 && margins.top < height_px / 2.0) ||
        !(margins.bottom >= 0.0 && margins.bottom < height_px / 2.0)) {
        throw Error("each plot margin must be smaller than half the matching dimension");
    }
    if (palette.empty()) {
        throw Error("plot palette must not be empty");
    }
    if (value_range && !(value_range->first < value_range->second)) {
        throw Error("plot value range must be increasing");
    }
}

void SvgDocument::save(const std::filesystem::path& path) const {
    std::error_code ignored;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ignored);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(fmt::format("cannot open '{}' for writing", path.string()));
    }
    out << text;
    if (!out) {
        throw Error(fmt::format("failed writing '{}'", path.string()));
    }
}

auto nice_step(double span, int target) -> double {
    if (!(span > 0.0) || !std::isfinite(span)) {
        return 1.0;
    }
    const double raw = span / static_cast<double>(std::max(target, 1));
    const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
    const double normalized = raw / magnitude;
    double factor = 10.0;
    if (normalized <= 1.0) {
        factor = 1.0;
    } else if (normalized <= 2.0) {
        factor = 2.0;
    } else if (normalized <= 5.0) {
        factor = 5.0;
    }
    return factor * magnitude;
}

auto nice_ticks(double low, double high, int target) -> std::vector<double> {
    if (high < low) {
        std::swap(low, high);
    }
    const double step = nice_step(high - low, target);
    const double first = std::floor(low / step);
    const double last = std::ceil(high / step);
    std::vector<double> ticks;
    for (double k = first; k <= last; k += 1.0) {
        ticks.push_back(k * step);
    }
    return ticks;
}

auto boxplot_scale(const BoxplotStats& stats, std::span<const double> outlier_values,
                   const PlotSpec& spec) -> LinearScale {
    double low = stats.whisker_low;
    double high = stats.whisker_high;
    for (const double v : outlier_values) {
        low = std::min(low, v);
        high = std::max(high, v);
    }
    double pad = 0.05 * (high - low);
    if (!(pad > 0.0)) {
        pad = high != 0.0 ? 0.05 * std::fabs(high) : 1.0;
    }
    if (spec.value_range) {
        low = spec.value_range->first;
        high = spec.value_range->second;
        pad = 0.0;
    }
    return LinearScale{low - pad, high + pad, spec.plot_bottom(), spec.plot_top()};
}

auto bar_scale(const GroupedStats& groups, const PlotSpec& spec) -> LinearScale {
    if (spec.value_range) {
        return LinearScale{spec.value_range->first, spec.value_range->second, spec.plot_bottom(),
                           spec.plot_top()};
    }
    double low = 0.0;
    double high = 0.0;
    for (const auto& g : groups.groups) {
        low = std::min(low, g.mean);
        high = std::max(high, g.mean);
    }
    if (low == high) {
        high = 1.0;
    }
    const auto ticks = nice_ticks(low, high);
    return LinearScale{ticks.front(), ticks.back(), spec.plot_bottom(), spec.plot_top()};
}

auto render_boxplot(const BoxplotStats& stats, std::span<const double> outlier_values,
                    const PlotSpec& spec) -> SvgDocument {
    spec.validate();
    const auto scale = boxplot_scale(stats, outlier_values, spec);
    SvgBuilder svg(spec);
    svg.value_axis(scale);

    const double cx = (spec.plot_left() + spec.plot_right()) / 2.0;
    const double box_width = std::min(120.0, 0.4 * (spec.plot_right() - spec.plot_left()));
    const double half = box_width / 2.0;
    const double y_q1 = scale(stats.q1);
    const double y_q3 = scale(stats.q3);

    svg.line("whisker", cx, y_q3, cx, scale(stats.whisker_high));
    svg.line("whisker", cx, y_q1, cx, scale(stats.whisker_low));
    svg.line("whisker-cap", cx - half / 2.0, scale(stats.whisker_high), cx + half / 2.0,
             scale(stats.whisker_high));
    svg.line("whisker-cap", cx - half / 2.0, scale(stats.whisker_low), cx + half / 2.0,
             scale(stats.whisker_low));
    svg.rect("box", cx - half, y_q3, box_width, y_q1 - y_q3, spec.palette.front(), "#333333");
    svg.line("median", cx - half, scale(stats.median), cx + half, scale(stats.median), "#222222",
             2.0);
    for (const double v : outlier_values) {
        svg.circle("outlier", cx, scale(v), 4.0);
    }
    return svg.finish();
}

auto render_bar(const GroupedStats& groups, const PlotSpec& spec) -> SvgDocument {
    spec.validate();
    if (groups.groups.empty()) {
        throw Error("bar chart needs at least one group");
    }
    const auto scale = bar_scale(groups, spec);
    SvgBuilder svg(spec);
    svg.value_axis(scale);

    const double band =
        (spec.plot_right() - spec.plot_left()) / static_cast<double>(groups.groups.size());
    const double bar_width = 0.7 * band;
    const double baseline = scale(0.0);
    for (std::size_t i = 0; i < groups.groups.size(); ++i) {
        const auto& g = groups.groups[i];
        const double x = spec.plot_left() + static_cast<double>(i) * band + 0.15 * band;
        const double top = scale(g.mean);
        svg.rect("bar", x, std::min(top, baseline), bar_width, std::fabs(baseline - top),
                 spec.palette[i % spec.palette.size()]);
        svg.text("bar-value", x + bar_width / 2.0, std::min(top, baseline) - 10.0,
                 px(g.mean), "middle", 11);
        svg.text("x-label", x + bar_width / 2.0, spec.plot_bottom() + 20.0, g.key, "middle", 12);
    }
    svg.line("baseline", spec.plot_left(), baseline, spec.plot_right(), baseline);
    svg.text("x-title", (spec.plot_left() + spec.plot_right()) / 2.0, spec.plot_bottom() + 45.0,
             groups.key_column, "middle", 13);
    svg.text("y-title", spec.margins.left / 4.0, (spec.plot_top() + spec.plot_bottom()) / 2.0,
             "mean " + groups.target_column, "middle", 13);
    return svg.finish();
}

auto heatmap_color(double value) -> std::string {
    const double v = std::clamp(value, -1.0, 1.0);
    const auto low = parse_hex(kRampLow);
    const auto high = parse_hex(kRampHigh);
    const std::array<int, 3> white{255, 255, 255};
    std::array<int, 3> rgb{};
    for (std::size_t i = 0; i < 3; ++i) {
        const double channel = v < 0.0 ? low[i] + (white[i] - low[i]) * (v + 1.0)
                                        : white[i] + (high[i] - white[i]) * v;
        rgb[i] = static_cast<int>(std::lround(channel));
    }
    return fmt::format("#{:02X}{:02X}{:02X}", rgb[0], rgb[1], rgb[2]);
}

auto render_heatmap(std::span<const double> matrix, std::span<const std::string> labels,
                    const PlotSpec& spec) -> SvgDocument {
    spec.validate();
    const auto n = labels.size();
    if (n == 0 || matrix.size() != n * n) {
        throw Error(fmt::format("heatmap needs a square matrix matching {} labels, got {} values",
                                n, matrix.size()));
    }
    SvgBuilder svg(spec);
    const double cell = std::min(spec.plot_right() - spec.plot_left(),
                                 spec.plot_bottom() - spec.plot_top()) /
                        static_cast<double>(n);
    const double x0 = spec.plot_left();
    const double y0 = spec.plot_top();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = matrix[i * n + j];
            const double x = x0 + static_cast<double>(j) * cell;
            const double y = y0 + static_cast<double>(i) * cell;
            svg.rect("cell", x, y, cell, cell, heatmap_color(v), "#FFFFFF");
            svg.text("cell-value", x + cell / 2.0, y + cell / 2.0, px(v), "middle", 12);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double mid = static_cast<double>(i) * cell + cell / 2.0;
        svg.text("row-label", x0 - 6.0, y0 + mid, labels[i], "end", 11);
        svg.text("col-label", x0 + mid, y0 + static_cast<double>(n) * cell + 14.0, labels[i],
                 "middle", 11);
    }
    return svg.finish();
}

auto render_heatmap(const CorrelationMatrix& matrix, const PlotSpec& spec) -> SvgDocument {
    return render_heatmap(matrix.values, matrix.labels, spec);
}

}  // namespace tripeda
