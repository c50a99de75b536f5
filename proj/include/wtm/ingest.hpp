#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "wtm/event_log.hpp"
#include "wtm/time.hpp"

namespace wtm {

struct ColumnMapping {
  std::string case_column = "case_id";
  std::string activity_column = "activity";
  std::string resource_column = "resource";
  std::string start_column = "start_time";
  std::string end_column = "end_time";
  std::optional<std::string> enabled_column;
  TimestampFormat timestamp_format = TimestampFormat::Iso8601;

  // Throws ConfigError when mandatory names are empty or not distinct.
  void validate() const;

  // Keys: case, activity, resource, start, end, enabled (optional), timestamp_format.
  static ColumnMapping from_json(const nlohmann::json& j);
  static ColumnMapping load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

struct IngestStats {
  std::size_t rows = 0;
  std::size_t accepted = 0;
  std::size_t rejected_bad_timestamp = 0;
  std::size_t rejected_end_before_start = 0;
  std::size_t rejected_enabled_after_start = 0;
  std::size_t rejected_malformed_row = 0;  // wrong field count or empty case/activity
  std::size_t truncated_subsecond = 0;     // rows with at least one truncated timestamp
  std::size_t assumed_utc = 0;             // rows with at least one zone-less timestamp
  std::size_t unknown_resource = 0;

  std::size_t rejected() const {
    return rejected_bad_timestamp + rejected_end_before_start + rejected_enabled_after_start +
           rejected_malformed_row;
  }

  nlohmann::ordered_json to_json() const;
};

struct IngestResult {
  EventLog log;
  IngestStats stats;
};

// RFC-4180 record reader: quoted fields, doubled quotes, embedded newlines,
// CRLF line endings. Returns false at end of input.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields);

// Throws ConfigError for a missing mandatory column and DataError when no row
// survives validation. Rejected rows are counted, never fatal.
IngestResult parse_log(std::istream& in, const ColumnMapping& mapping);
IngestResult load_log(const std::filesystem::path& path, const ColumnMapping& mapping);

}  // namespace wtm
