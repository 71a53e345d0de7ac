#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "algorec/eval/metrics.hpp"

namespace algorec::eval {

/// Column order of the CSV report.
inline constexpr std::array<std::string_view, 12> kReportColumns{
    "filter",   "style",    "backend",         "algorithm",       "ST",          "precision",
    "recall",   "f1",       "macro_f1",        "reduction_micro", "reduction_macro",
    "excluded_TPs"};

/// Reports sorted by (filter, style, backend, mode); rows by algorithm then ST.
void write_report_csv(std::vector<MetricsReport> reports, std::ostream& out);

nlohmann::json report_to_json(const MetricsReport& report);
MetricsReport report_from_json(const nlohmann::json& j);

nlohmann::json reports_to_json(std::vector<MetricsReport> reports);
std::vector<MetricsReport> reports_from_json(const nlohmann::json& j);

/// Writes the CSV report and its JSON mirror. Throws DataError on unwritable paths.
void write_report_files(const std::vector<MetricsReport>& reports,
                        const std::filesystem::path& csv_path,
                        const std::filesystem::path& json_path);

}  // namespace algorec::eval
