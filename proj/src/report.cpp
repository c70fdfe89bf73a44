#include <tripeda/report.hpp>

#include <tripeda/csv.hpp>

#include <fmt/core.h>
#include <fmt/format.h>

namespace tripeda {

namespace {

auto normality_line(std::string_view key, const std::optional<NormalityResult>& n)
    -> std::string {
    if (!n) {
        return fmt::format("normality \"{}\": not assessed (needs n >= 20 and some spread)", key);
    }
    return fmt::format("normality \"{}\": D'Agostino K^2 = {:.6f}, p = {:.6f} ({})", key,
                       n->statistic, n->p_value,
                       n->passed_at_05 ? "consistent with normal" : "departs from normal");
}

auto link_target(const std::filesystem::path& file, const std::filesystem::path& dir)
    -> std::string {
    namespace fs = std::filesystem;
    const auto base = fs::absolute(dir.empty() ? fs::path(".") : dir).lexically_normal();
    const auto rel = fs::absolute(file).lexically_normal().lexically_relative(base);
    return rel.empty() ? file.generic_string() : rel.generic_string();
}

}  // namespace

auto ttest_json(const TTestResult& r) -> nlohmann::json {
    auto normality = [](const std::optional<NormalityResult>& n) -> nlohmann::json {
        if (!n) {
            return nullptr;
        }
        return {{"test", "dagostino_k2"},
                {"statistic", n->statistic},
                {"p_value", n->p_value},
                {"n", n->n},
                {"passed_at_05", n->passed_at_05}};
    };
    nlohmann::json variance = nullptr;
    if (r.variance_test) {
        variance = {{"test", "levene_median"},
                    {"statistic", r.variance_test->statistic},
                    {"p_value", r.variance_test->p_value},
                    {"equal_variances_at_05", r.variance_test->equal_variances_at_05}};
    }
    return {{"t", r.t},
            {"df", r.df},
            {"p_value", r.p_value},
            {"method", std::string(to_string(r.method))},
            {"n1", r.n1},
            {"n2", r.n2},
            {"mean1", r.mean1},
            {"mean2", r.mean2},
            {"var1", r.var1},
            {"var2", r.var2},
            {"normality1", normality(r.normality1)},
            {"normality2", normality(r.normality2)},
            {"variance_test", variance},
            {"significant_at_05", r.significant_at_05}};
}

auto format_ttest(const TTestRecord& record) -> std::string {
    const auto& r = record.result;
    std::string out = fmt::format("two-sample t-test of {} by {}\n", record.target,
                                  record.group_column);
    out += fmt::format("group \"{}\": n = {}, mean = {:.6f}, variance = {:.6f}\n",
                       record.first_key, r.n1, r.mean1, r.var1);
    out += fmt::format("group \"{}\": n = {}, mean = {:.6f}, variance = {:.6f}\n",
                       record.second_key, r.n2, r.mean2, r.var2);
    out += normality_line(record.first_key, r.normality1) + '\n';
    out += normality_line(record.second_key, r.normality2) + '\n';
    if (r.variance_test) {
        out += fmt::format("equal variances: Levene (median) W = {:.6f}, p = {:.6f} ({})\n",
                           r.variance_test->statistic, r.variance_test->p_value,
                           r.variance_test->equal_variances_at_05 ? "not rejected" : "rejected");
    } else {
        out += "equal variances: not assessed\n";
    }
    out += fmt::format("method: {}\n", r.method == TTestMethod::Pooled
                                           ? "pooled (Student)"
                                           : "Welch (unequal variances)");
    out += fmt::format("t-statistic: {:.6f}\n", r.t);
    out += fmt::format("degrees of freedom: {:.6f}\n", r.df);
    out += fmt::format("p-value: {:.6f}\n", r.p_value);
    out += fmt::format("conclusion: {} at the {} level",
                       r.significant_at_05 ? "statistically significant difference"
                                           : "no statistically significant difference",
                       kSignificanceLevel);
    return out;
}

auto emit_report(const Session& session, const std::filesystem::path& report_dir)
    -> std::string {
    std::string out = "# Trip analysis report\n";

    if (!session.log.empty()) {
        out += "\n## Commands\n\n";
        for (std::size_t i = 0; i < session.log.size(); ++i) {
            out += fmt::format("{}. `{}`: {}\n", i + 1, session.log[i].command,
                               session.log[i].outcome);
        }
    }

    if (session.current) {
        const auto& frame = *session.current;
        out += fmt::format("\n## Dataset\n\n{} rows, {} columns\n\n", frame.row_count(),
                           frame.column_count());
        out += "| column | type |\n|---|---|\n";
        for (const auto& [name, type] : dtypes(frame)) {
            out += fmt::format("| {} | {} |\n", name, to_string(type));
        }
    }

    if (session.last_summary) {
        out += "\n## Summary statistics\n\n```\n" + session.last_summary->to_text() + "\n```\n";
    }

    if (session.last_outliers) {
        const auto& o = *session.last_outliers;
        out += fmt::format("\n## Outliers\n\nmethod: {}, {}: {}, column: {}\n\n",
                           to_string(o.method),
                           o.method == OutlierMethod::ZScore ? "threshold" : "k",
                           format_double(o.threshold), o.column);
        out += fmt::format("{} rows flagged\n", o.indices.size());
        if (!o.indices.empty()) {
            out += "\n| row | score |\n|---|---|\n";
            for (std::size_t i = 0; i < o.indices.size(); ++i) {
                out += fmt::format("| {} | {:.6f} |\n", o.indices[i], o.scores[i]);
            }
        }
    }

    if (session.last_ttest) {
        out += "\n## Hypothesis test\n\n```\n" + format_ttest(*session.last_ttest) + "\n```\n";
    }

    if (!session.charts.empty()) {
        out += "\n## Charts\n\n";
        for (const auto& chart : session.charts) {
            const auto target = link_target(chart.path, report_dir);
            out += fmt::format("- [{}]({})\n", chart.kind, target);
        }
    }
    return out;
}

}  // namespace tripeda
