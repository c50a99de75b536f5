#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "wtm/ingest.hpp"
#include "wtm/pipeline.hpp"

namespace wtm {

inline constexpr int kReportSchemaVersion = 1;

// Round to `digits` significant digits; reported ratios use 4.
double round_significant(double value, int digits = 4);

std::string csv_escape(std::string_view field);

struct ReportContext {
  const AnalysisResult& result;
  const AnalysisConfig& config;
  const IngestStats* ingest = nullptr;
  const ColumnMapping* mapping = nullptr;
};

nlohmann::ordered_json report_json(const ReportContext& ctx);

// Header: source,target,case_freq,total_freq,total_wt_s,wt_batching_s,
// wt_contention_s,wt_prioritization_s,wt_unavailability_s,wt_extraneous_s,cte_impact
std::string transitions_csv(const AnalysisResult& result);

std::string summary_text(const AnalysisResult& result);

// Writes to a sibling temp file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct ReportFiles {
  std::filesystem::path report_json;
  std::filesystem::path transitions_csv;
  std::filesystem::path summary_txt;
  std::optional<std::filesystem::path> calendars_json;
};

// Renders every output in memory before the first write, so a failure while
// rendering leaves the output directory untouched.
ReportFiles write_report_files(const std::filesystem::path& out_dir, const ReportContext& ctx,
                               bool emit_calendars);

}  // namespace wtm
