#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qcb/harness.hpp"

namespace qcb::eval {

enum class ReportFormat { Json, Csv, Both };

ReportFormat parse_report_format(const std::string& s);

/// Full nested report. Non-finite numbers are written as the strings
/// "inf", "-inf" and "nan".
std::string report_to_json(const MetricsReport& r, int indent = 2);
/// Throws DataError on schema mismatch or malformed input.
MetricsReport report_from_json(const std::string& text);
MetricsReport load_report(const std::filesystem::path& path);

/// The JSON text with every timing-derived field removed.
std::string report_without_timing(const MetricsReport& r);

std::string summary_csv(const MetricsReport& r);
/// Per-model mean accuracy (recall) per severity class.
std::string per_class_csv(const MetricsReport& r);
std::string expressibility_csv(const std::vector<ExpressibilityPoint>& points);

/// Writes report.json and/or summary.csv, per_class.csv (and
/// expressibility.csv when present) into `dir`. Returns the paths written.
std::vector<std::filesystem::path> emit_report(const MetricsReport& r, const std::filesystem::path& dir,
                                               ReportFormat format);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace qcb::eval
