// wt_miner: waiting-time cause analysis for activity-instance logs.
//
//   wt_miner analyze   --log log.csv --out out/
//   wt_miner generate  --causes contention,batching --cases 50 --seed 1 -o synth.csv
//   wt_miner calendars --log log.csv -o calendars.json
//
// Exit codes: 0 ok, 1 runtime failure, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "wtm/calendars.hpp"
#include "wtm/error.hpp"
#include "wtm/ingest.hpp"
#include "wtm/pipeline.hpp"
#include "wtm/report.hpp"
#include "wtm/synthlog.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LogOptions {
  std::string log;
  std::string mapping;
  std::string case_column, activity_column, resource_column, start_column, end_column,
      enabled_column, timestamp_format;
};

struct AnalysisOptions {
  double dependency_threshold = 0.9;
  std::size_t min_observations = 1;
  bool no_loop_guard = false;
  int granule = 60;
  double confidence = 0.1;
  double support = 0.1;
  wtm::Seconds gap_tolerance = 0;
  std::size_t min_batch_size = 2;
  std::string calendar_overrides;
};

void add_log_options(CLI::App* cmd, LogOptions& o) {
  cmd->add_option("--log", o.log, "Activity-instance CSV log")->required();
  cmd->add_option("--mapping", o.mapping, "Column mapping JSON file");
  cmd->add_option("--case-column", o.case_column, "Case id column");
  cmd->add_option("--activity-column", o.activity_column, "Activity label column");
  cmd->add_option("--resource-column", o.resource_column, "Resource column");
  cmd->add_option("--start-column", o.start_column, "Start timestamp column");
  cmd->add_option("--end-column", o.end_column, "End timestamp column");
  cmd->add_option("--enabled-column", o.enabled_column, "Optional enablement timestamp column");
  cmd->add_option("--timestamp-format", o.timestamp_format, "iso8601 (default) or epoch");
}

void add_calendar_options(CLI::App* cmd, AnalysisOptions& o) {
  cmd->add_option("--granule", o.granule, "Calendar slot length in minutes")->capture_default_str();
  cmd->add_option("--confidence", o.confidence, "Calendar confidence cut")->capture_default_str();
  cmd->add_option("--support", o.support, "Calendar support target")->capture_default_str();
  cmd->add_option("--calendar-overrides", o.calendar_overrides, "Weekly calendars JSON per resource");
}

void add_analysis_options(CLI::App* cmd, AnalysisOptions& o) {
  cmd->add_option("--dependency-threshold", o.dependency_threshold,
                  "Concurrency oracle dependency threshold")
      ->capture_default_str();
  cmd->add_option("--min-observations", o.min_observations,
                  "Minimum directly-follows count in each direction for concurrency")
      ->capture_default_str();
  cmd->add_flag("--no-loop-guard", o.no_loop_guard, "Allow length-2 loops to be concurrent");
  cmd->add_option("--gap-tolerance", o.gap_tolerance, "Max idle seconds between batch members")
      ->capture_default_str();
  cmd->add_option("--min-batch-size", o.min_batch_size, "Minimum batch size")->capture_default_str();
  add_calendar_options(cmd, o);
}

wtm::ColumnMapping build_mapping(const LogOptions& o) {
  wtm::ColumnMapping m = o.mapping.empty() ? wtm::ColumnMapping{} : wtm::ColumnMapping::load(o.mapping);
  if (!o.case_column.empty()) m.case_column = o.case_column;
  if (!o.activity_column.empty()) m.activity_column = o.activity_column;
  if (!o.resource_column.empty()) m.resource_column = o.resource_column;
  if (!o.start_column.empty()) m.start_column = o.start_column;
  if (!o.end_column.empty()) m.end_column = o.end_column;
  if (!o.enabled_column.empty()) m.enabled_column = o.enabled_column;
  if (!o.timestamp_format.empty()) {
    auto f = wtm::parse_timestamp_format(o.timestamp_format);
    if (!f) throw UsageError(fmt::format("unknown timestamp format '{}'", o.timestamp_format));
    m.timestamp_format = *f;
  }
  try {
    m.validate();
  } catch (const wtm::ConfigError& e) {
    throw UsageError(e.what());
  }
  return m;
}

wtm::AnalysisConfig build_config(const AnalysisOptions& o) {
  wtm::AnalysisConfig cfg;
  cfg.oracle.dependency_threshold = o.dependency_threshold;
  cfg.oracle.min_bidirectional_observations = o.min_observations;
  cfg.oracle.length2_loop_guard = !o.no_loop_guard;
  cfg.calendar.granule_minutes = o.granule;
  cfg.calendar.confidence = o.confidence;
  cfg.calendar.support = o.support;
  cfg.batching.gap_tolerance = o.gap_tolerance;
  cfg.batching.min_batch_size = o.min_batch_size;
  try {
    cfg.validate();
  } catch (const wtm::ConfigError& e) {
    throw UsageError(e.what());
  }
  if (!o.calendar_overrides.empty()) {
    cfg.calendar_overrides = wtm::load_calendar_overrides(o.calendar_overrides);
  }
  return cfg;
}

int run_analyze(const LogOptions& lo, const AnalysisOptions& ao, const std::string& out_dir,
                bool emit_calendars) {
  const wtm::ColumnMapping mapping = build_mapping(lo);
  const wtm::AnalysisConfig config = build_config(ao);
  const wtm::IngestResult ingest = wtm::load_log(lo.log, mapping);
  const wtm::AnalysisResult result = wtm::analyze(ingest.log, config);
  const wtm::ReportFiles files = wtm::write_report_files(
      out_dir, {result, config, &ingest.stats, &mapping}, emit_calendars);

  std::cout << wtm::summary_text(result) << '\n';
  std::cout << "Wrote " << files.report_json.string() << ", " << files.transitions_csv.string()
            << ", " << files.summary_txt.string();
  if (files.calendars_json) std::cout << ", " << files.calendars_json->string();
  std::cout << '\n';
  return kExitOk;
}

int run_calendars(const LogOptions& lo, const AnalysisOptions& ao, const std::string& out) {
  const wtm::ColumnMapping mapping = build_mapping(lo);
  const wtm::AnalysisConfig config = build_config(ao);
  const wtm::IngestResult ingest = wtm::load_log(lo.log, mapping);
  const wtm::CalendarMap calendars =
      wtm::discover_calendars(ingest.log, config.calendar, config.calendar_overrides);
  const std::string text = wtm::calendars_to_json(calendars).dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    wtm::write_file_atomic(out, text);
  }
  return kExitOk;
}

fs::path truth_path_for(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".truth.json");
  return p;
}

void write_synthetic(const wtm::synth::InjectionSpec& spec, const fs::path& csv) {
  const wtm::synth::SyntheticLog log = wtm::synth::generate(spec);
  if (csv.has_parent_path()) fs::create_directories(csv.parent_path());
  wtm::write_file_atomic(csv, log.to_csv());
  wtm::write_file_atomic(truth_path_for(csv), log.truth.to_json().dump(2) + "\n");
}

int run_generate(const std::string& causes, std::size_t cases, std::uint64_t seed, bool artifacts,
                 bool grid, const std::string& out) {
  wtm::synth::InjectionSpec spec;
  spec.n_cases = cases;
  spec.seed = seed;
  spec.reproduce_artifacts = artifacts;
  try {
    if (grid) {
      for (unsigned mask = 0; mask < (1U << wtm::kCauseCount); ++mask) {
        spec.causes = wtm::synth::CauseFlags::from_mask(mask);
        spec.validate();
      }
    } else {
      spec.causes = wtm::synth::CauseFlags::parse(causes);
      spec.validate();
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  if (!grid) {
    write_synthetic(spec, out);
    std::cout << "Wrote " << out << " and " << truth_path_for(out).string() << '\n';
    return kExitOk;
  }
  const fs::path dir = out;
  for (unsigned mask = 0; mask < (1U << wtm::kCauseCount); ++mask) {
    spec.causes = wtm::synth::CauseFlags::from_mask(mask);
    write_synthetic(spec, dir / fmt::format("synth_{:02}.csv", mask));
  }
  std::cout << "Wrote 32 logs to " << dir.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Waiting-time cause analysis for business-process activity logs"};
  app.require_subcommand(1);

  LogOptions analyze_log;
  AnalysisOptions analyze_opts;
  std::string out_dir = "out";
  bool emit_calendars = false;
  CLI::App* analyze = app.add_subcommand("analyze", "Decompose waiting times and report CTE impact");
  add_log_options(analyze, analyze_log);
  add_analysis_options(analyze, analyze_opts);
  analyze->add_option("--out", out_dir, "Output directory")->capture_default_str();
  analyze->add_flag("--emit-calendars", emit_calendars, "Also write the resource calendars used");

  std::string causes = "none";
  std::size_t cases = 20;
  std::uint64_t seed = 1;
  bool artifacts = false;
  bool grid = false;
  std::string generate_out;
  CLI::App* generate = app.add_subcommand("generate", "Generate a synthetic log with injected causes");
  generate->add_option("--causes", causes, "Comma-separated causes, 'none' or 'all'")->capture_default_str();
  generate->add_option("--cases", cases, "Number of cases")->capture_default_str();
  generate->add_option("--seed", seed, "Random seed")->capture_default_str();
  generate->add_flag("--artifacts", artifacts, "Reproduce known cross-cause side effects");
  generate->add_flag("--grid", grid, "Write all 32 cause combinations into the -o directory");
  generate->add_option("-o,--out", generate_out, "Output CSV (or directory with --grid)")->required();

  LogOptions calendar_log;
  AnalysisOptions calendar_opts;
  std::string calendar_out;
  CLI::App* calendars = app.add_subcommand("calendars", "Dump discovered resource calendars as JSON");
  add_log_options(calendars, calendar_log);
  add_calendar_options(calendars, calendar_opts);
  calendars->add_option("-o,--out", calendar_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) return run_analyze(analyze_log, analyze_opts, out_dir, emit_calendars);
    if (*generate) return run_generate(causes, cases, seed, artifacts, grid, generate_out);
    if (*calendars) return run_calendars(calendar_log, calendar_opts, calendar_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
