#include "wtm/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "wtm/error.hpp"

namespace wtm {
namespace {

std::string ratio_text(double v) { return fmt::format("{}", round_significant(v)); }

nlohmann::ordered_json cause_json(const CauseImpact& ci) {
  return {{"wt_s", ci.wt},
          {"wt", format_duration(ci.wt)},
          {"share_of_wt", round_significant(ci.share_of_wt)},
          {"cte_if_eliminated", round_significant(ci.cte_if_eliminated)},
          {"delta", round_significant(ci.delta)}};
}

nlohmann::ordered_json per_cause_json(const std::array<CauseImpact, kCauseCount>& causes) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (Cause c : kAllCauses) out[std::string(cause_name(c))] = cause_json(causes[static_cast<std::size_t>(c)]);
  return out;
}

}  // namespace

double round_significant(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  const double magnitude = std::floor(std::log10(std::fabs(value)));
  const double scale = std::pow(10.0, static_cast<double>(digits) - 1.0 - magnitude);
  return std::round(value * scale) / scale;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

nlohmann::ordered_json report_json(const ReportContext& ctx) {
  const AnalysisResult& r = ctx.result;
  const AnalysisConfig& cfg = ctx.config;
  const CteReport& rep = r.report;

  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;

  nlohmann::ordered_json overrides = nlohmann::ordered_json::array();
  for (const auto& [resource, cal] : cfg.calendar_overrides) overrides.push_back(resource);
  j["params"] = {
      {"oracle",
       {{"dependency_threshold", cfg.oracle.dependency_threshold},
        {"min_bidirectional_observations", cfg.oracle.min_bidirectional_observations},
        {"length2_loop_guard", cfg.oracle.length2_loop_guard}}},
      {"calendar",
       {{"granule_minutes", cfg.calendar.granule_minutes},
        {"confidence", cfg.calendar.confidence},
        {"support", cfg.calendar.support},
        {"overridden_resources", overrides}}},
      {"batching",
       {{"gap_tolerance_s", cfg.batching.gap_tolerance},
        {"min_batch_size", cfg.batching.min_batch_size}}},
      {"scoping",
       {{"processing_time", "all activity instances"},
        {"waiting_time", "transition instances only"},
        {"interval_semantics", "half-open [start, end), integer seconds"}}}};
  if (ctx.mapping) j["params"]["mapping"] = ctx.mapping->to_json();

  j["ingest_stats"] = ctx.ingest ? ctx.ingest->to_json() : nlohmann::ordered_json(nullptr);

  const Diagnostics& d = r.diagnostics;
  j["diagnostics"] = {{"clamped_enablements", d.clamped_enablements},
                      {"supplied_enablements", d.supplied_enablements},
                      {"multitasking_rate", round_significant(d.multitasking_rate)},
                      {"batches", r.batches.batches.size()},
                      {"calendars_discovered", d.calendars.discovered},
                      {"calendars_overridden", d.calendars.overridden},
                      {"unused_calendar_overrides", d.calendars.unused_overrides}};

  nlohmann::ordered_json concurrent = nlohmann::ordered_json::array();
  for (const auto& [a, b] : r.relation.pairs()) concurrent.push_back({a, b});
  j["concurrent_activities"] = concurrent;

  j["summary"] = {{"cases", r.log().case_count()},
                  {"activity_instances", r.log().size()},
                  {"transitions", r.transitions.size()},
                  {"transition_instances", transition_instance_count(r.transitions)},
                  {"total_pt_s", rep.total_pt},
                  {"total_pt", format_duration(rep.total_pt)},
                  {"total_wt_s", rep.total_wt},
                  {"total_wt", format_duration(rep.total_wt)},
                  {"cte", round_significant(rep.cte)}};
  j["per_cause"] = per_cause_json(rep.per_cause);

  nlohmann::ordered_json transitions = nlohmann::ordered_json::array();
  for (const TransitionImpact& t : rep.per_transition) {
    transitions.push_back({{"source", t.source_activity},
                           {"target", t.target_activity},
                           {"case_freq", round_significant(t.case_frequency)},
                           {"total_freq", t.total_frequency},
                           {"total_wt_s", t.total_wt},
                           {"total_wt", format_duration(t.total_wt)},
                           {"wt_by_cause", per_cause_json(t.per_cause)},
                           {"cte_if_eliminated", round_significant(t.cte_if_eliminated)},
                           {"cte_impact", round_significant(t.delta)}});
  }
  j["transitions"] = transitions;
  return j;
}

std::string transitions_csv(const AnalysisResult& result) {
  std::ostringstream out;
  out << "source,target,case_freq,total_freq,total_wt_s";
  for (Cause c : kAllCauses) out << ",wt_" << cause_name(c) << "_s";
  out << ",cte_impact\n";
  for (const TransitionImpact& t : result.report.per_transition) {
    out << csv_escape(t.source_activity) << ',' << csv_escape(t.target_activity) << ','
        << ratio_text(t.case_frequency) << ',' << t.total_frequency << ',' << t.total_wt;
    for (const CauseImpact& ci : t.per_cause) out << ',' << ci.wt;
    out << ',' << ratio_text(t.delta) << '\n';
  }
  return out.str();
}

std::string summary_text(const AnalysisResult& result) {
  const CteReport& rep = result.report;
  std::string out;
  out += fmt::format("Cases: {}  Activity instances: {}  Transitions: {}  Transition instances: {}\n",
                     result.log().case_count(), result.log().size(), result.transitions.size(),
                     transition_instance_count(result.transitions));
  out += fmt::format("Processing time: {}  Waiting time: {}  CTE: {:.2f}%\n\n",
                     format_duration(rep.total_pt), format_duration(rep.total_wt), rep.cte * 100.0);
  out += "Waiting time by cause:\n";
  for (Cause c : kAllCauses) {
    const CauseImpact& ci = rep.per_cause[static_cast<std::size_t>(c)];
    out += fmt::format("  {:<15} {:>16}  {:6.2f}% of WT  CTE if eliminated {:6.2f}% (+{:.2f} pp)\n",
                       cause_name(c), format_duration(ci.wt), ci.share_of_wt * 100.0,
                       ci.cte_if_eliminated * 100.0, ci.delta * 100.0);
  }
  out += "\nTransitions by total waiting time:\n";
  for (const TransitionImpact& t : rep.per_transition) {
    out += fmt::format("  {} -> {}  freq {} ({:.1f}% of cases)  WT {}  CTE if eliminated {:.2f}%\n",
                       t.source_activity, t.target_activity, t.total_frequency,
                       t.case_frequency * 100.0, format_duration(t.total_wt),
                       t.cte_if_eliminated * 100.0);
    for (Cause c : kAllCauses) {
      const CauseImpact& ci = t.per_cause[static_cast<std::size_t>(c)];
      if (ci.wt == 0) continue;
      out += fmt::format("      {:<15} {:>16}  {:6.2f}%\n", cause_name(c), format_duration(ci.wt),
                         ci.share_of_wt * 100.0);
    }
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write '{}'", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(fmt::format("failed writing '{}'", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

ReportFiles write_report_files(const std::filesystem::path& out_dir, const ReportContext& ctx,
                               bool emit_calendars) {
  const std::string json = report_json(ctx).dump(2) + "\n";
  const std::string csv = transitions_csv(ctx.result);
  const std::string summary = summary_text(ctx.result);
  std::string calendars;
  if (emit_calendars) calendars = calendars_to_json(ctx.result.calendars).dump(2) + "\n";

  std::filesystem::create_directories(out_dir);
  ReportFiles files{out_dir / "report.json", out_dir / "transitions.csv", out_dir / "summary.txt",
                    std::nullopt};
  write_file_atomic(files.report_json, json);
  write_file_atomic(files.transitions_csv, csv);
  write_file_atomic(files.summary_txt, summary);
  if (emit_calendars) {
    files.calendars_json = out_dir / "calendars.json";
    write_file_atomic(*files.calendars_json, calendars);
  }
  return files;
}

}  // namespace wtm
