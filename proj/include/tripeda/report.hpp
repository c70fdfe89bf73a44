#pragma once

#include <tripeda/session.hpp>
#include <tripeda/stats.hpp>

#include <json.hpp>

#include <filesystem>
#include <string>

namespace tripeda {

auto ttest_json(const TTestResult& result) -> nlohmann::json;

/// Plain-text block: groups, method, statistic, df, `p-value` to 6 decimals,
/// assumption checks and the verdict at the 0.05 level.
auto format_ttest(const TTestRecord& record) -> std::string;

/// Markdown report. Chart links are relative to `report_dir`.
auto emit_report(const Session& session, const std::filesystem::path& report_dir = {})
    -> std::string;

}  // namespace tripeda
