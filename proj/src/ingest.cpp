#include "wtm/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "wtm/error.hpp"

namespace wtm {
namespace {

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       std::string_view name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

std::size_t require_column(const std::vector<std::string>& header, std::string_view name) {
  if (auto idx = find_column(header, name)) return *idx;
  throw ConfigError(fmt::format("column '{}' not found in CSV header", name));
}

bool all_blank(const std::vector<std::string>& fields) {
  return std::all_of(fields.begin(), fields.end(), [](const std::string& f) {
    return f.find_first_not_of(" \t\r") == std::string::npos;
  });
}

}  // namespace

void ColumnMapping::validate() const {
  std::vector<std::string> names = {case_column, activity_column, resource_column, start_column,
                                    end_column};
  if (enabled_column) names.push_back(*enabled_column);
  for (const std::string& n : names) {
    if (n.empty()) throw ConfigError("column mapping contains an empty column name");
  }
  std::set<std::string> unique(names.begin(), names.end());
  if (unique.size() != names.size()) {
    throw ConfigError("column mapping names must be distinct");
  }
}

ColumnMapping ColumnMapping::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("column mapping must be a JSON object");
  ColumnMapping m;
  auto take = [&](const char* key, std::string& dst) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_string()) throw ConfigError(fmt::format("mapping key '{}' must be a string", key));
    dst = j.at(key).get<std::string>();
  };
  take("case", m.case_column);
  take("activity", m.activity_column);
  take("resource", m.resource_column);
  take("start", m.start_column);
  take("end", m.end_column);
  if (j.contains("enabled") && !j.at("enabled").is_null()) {
    std::string enabled;
    take("enabled", enabled);
    m.enabled_column = enabled;
  }
  if (j.contains("timestamp_format")) {
    std::string tag;
    take("timestamp_format", tag);
    auto fmt_tag = parse_timestamp_format(tag);
    if (!fmt_tag) throw ConfigError(fmt::format("unknown timestamp format '{}'", tag));
    m.timestamp_format = *fmt_tag;
  }
  m.validate();
  return m;
}

ColumnMapping ColumnMapping::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open mapping file '{}'", path.string()));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("malformed mapping file '{}': {}", path.string(), e.what()));
  }
  return from_json(j);
}

nlohmann::json ColumnMapping::to_json() const {
  nlohmann::json j = {{"case", case_column},   {"activity", activity_column},
                      {"resource", resource_column}, {"start", start_column},
                      {"end", end_column},     {"timestamp_format", to_string(timestamp_format)}};
  j["enabled"] = enabled_column ? nlohmann::json(*enabled_column) : nlohmann::json(nullptr);
  return j;
}

nlohmann::ordered_json IngestStats::to_json() const {
  return {{"rows", rows},
          {"accepted", accepted},
          {"rejected", rejected()},
          {"rejected_bad_timestamp", rejected_bad_timestamp},
          {"rejected_end_before_start", rejected_end_before_start},
          {"rejected_enabled_after_start", rejected_enabled_after_start},
          {"rejected_malformed_row", rejected_malformed_row},
          {"truncated_subsecond", truncated_subsecond},
          {"assumed_utc", assumed_utc},
          {"unknown_resource", unknown_resource}};
}

bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool quoted = false;
  bool field_started_quoted = false;
  char ch;
  while (in.get(ch)) {
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"' && field.empty() && !field_started_quoted) {
      quoted = true;
      field_started_quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      field_started_quoted = false;
    } else if (ch == '\n') {
      break;
    } else if (ch == '\r') {
      if (in.peek() == '\n') in.get(ch);
      break;
    } else {
      field.push_back(ch);
    }
  }
  fields.push_back(std::move(field));
  return true;
}

IngestResult parse_log(std::istream& in, const ColumnMapping& mapping) {
  mapping.validate();
  std::vector<std::string> header;
  if (!read_csv_record(in, header)) throw DataError("CSV input is empty");
  if (!header.empty() && header[0].starts_with("\xEF\xBB\xBF")) header[0].erase(0, 3);
  for (std::string& h : header) {
    while (!h.empty() && (h.back() == ' ' || h.back() == '\t')) h.pop_back();
    while (!h.empty() && (h.front() == ' ' || h.front() == '\t')) h.erase(h.begin());
  }

  const std::size_t case_col = require_column(header, mapping.case_column);
  const std::size_t activity_col = require_column(header, mapping.activity_column);
  const std::size_t resource_col = require_column(header, mapping.resource_column);
  const std::size_t start_col = require_column(header, mapping.start_column);
  const std::size_t end_col = require_column(header, mapping.end_column);
  std::optional<std::size_t> enabled_col;
  if (mapping.enabled_column) enabled_col = require_column(header, *mapping.enabled_column);

  IngestStats stats;
  std::vector<ActivityInstance> instances;
  std::vector<std::string> fields;
  while (read_csv_record(in, fields)) {
    if (all_blank(fields)) continue;
    ++stats.rows;
    if (fields.size() != header.size() || fields[case_col].empty() ||
        fields[activity_col].empty()) {
      ++stats.rejected_malformed_row;
      continue;
    }

    bool truncated = false;
    bool assumed_utc = false;
    auto parse = [&](const std::string& text) -> std::optional<TimeInstant> {
      auto p = parse_timestamp(text, mapping.timestamp_format);
      if (!p) return std::nullopt;
      truncated |= p->truncated_subsecond;
      assumed_utc |= p->assumed_utc;
      return p->instant;
    };

    auto start = parse(fields[start_col]);
    auto end = parse(fields[end_col]);
    std::optional<TimeInstant> enabled;
    bool enabled_ok = true;
    if (enabled_col && !fields[*enabled_col].empty()) {
      enabled = parse(fields[*enabled_col]);
      enabled_ok = enabled.has_value();
    }
    if (!start || !end || !enabled_ok) {
      ++stats.rejected_bad_timestamp;
      continue;
    }
    if (*end < *start) {
      ++stats.rejected_end_before_start;
      continue;
    }
    if (enabled && *start < *enabled) {
      ++stats.rejected_enabled_after_start;
      continue;
    }

    ActivityInstance inst;
    inst.case_id = fields[case_col];
    inst.activity = fields[activity_col];
    inst.resource = fields[resource_col];
    if (inst.resource.empty()) {
      inst.resource = std::string(kUnknownResource);
      ++stats.unknown_resource;
    }
    inst.started = *start;
    inst.completed = *end;
    inst.enabled = enabled;
    inst.enablement_source = enabled ? EnablementSource::Input : EnablementSource::Unset;
    if (truncated) ++stats.truncated_subsecond;
    if (assumed_utc) ++stats.assumed_utc;
    instances.push_back(std::move(inst));
  }

  stats.accepted = instances.size();
  if (instances.empty()) throw DataError("no valid activity instances left after filtering");
  return {EventLog(std::move(instances)), stats};
}

IngestResult load_log(const std::filesystem::path& path, const ColumnMapping& mapping) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open log file '{}'", path.string()));
  return parse_log(in, mapping);
}

}  // namespace wtm
