#include "wtm/calendars.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include <fmt/format.h>

#include "wtm/error.hpp"
#include "wtm/parallel.hpp"

namespace wtm {
namespace {

constexpr std::array<std::string_view, 7> kDayNames = {"MON", "TUE", "WED", "THU",
                                                       "FRI", "SAT", "SUN"};
constexpr int kMinutesPerDay = 24 * 60;
constexpr int kMaxRelaxations = 10;

// Instants a resource was seen interacting with the system. A completion marks
// the end of work, so it is attributed to the second before it.
void add_observations(const ActivityInstance& inst, std::vector<TimeInstant>& out) {
  out.push_back(inst.started);
  out.push_back(inst.completed > inst.started ? inst.completed - 1 : inst.completed);
}

WeeklyCalendar calendar_from_observations(const std::string& resource,
                                          const std::vector<TimeInstant>& observations,
                                          const CalendarParams& params) {
  WeeklyCalendar cal(resource, params.granule_minutes);
  std::vector<std::size_t> freq(cal.slot_count(), 0);
  for (TimeInstant t : observations) ++freq[cal.slot_of(t)];
  const std::size_t total = observations.size();
  const std::size_t max_freq = *std::max_element(freq.begin(), freq.end());
  const std::size_t nonzero =
      static_cast<std::size_t>(std::count_if(freq.begin(), freq.end(), [](auto f) { return f > 0; }));

  double cut = params.confidence * static_cast<double>(max_freq);
  for (int round = 0;; ++round) {
    std::size_t covered = 0;
    std::size_t working = 0;
    for (std::size_t s = 0; s < freq.size(); ++s) {
      bool on = freq[s] > 0 && static_cast<double>(freq[s]) >= cut;
      cal.set_working(s, on);
      if (on) {
        covered += freq[s];
        ++working;
      }
    }
    const double coverage = static_cast<double>(covered) / static_cast<double>(total);
    if (coverage >= params.support || working == nonzero || round == kMaxRelaxations) break;
    cut /= 2.0;
  }
  return cal;
}

int parse_hhmm(const nlohmann::json& v, std::string_view what) {
  if (!v.is_string()) throw ConfigError(fmt::format("calendar '{}' must be an HH:MM string", what));
  const std::string s = v.get<std::string>();
  if (s.size() != 5 || s[2] != ':' || !std::isdigit(static_cast<unsigned char>(s[0])) ||
      !std::isdigit(static_cast<unsigned char>(s[1])) ||
      !std::isdigit(static_cast<unsigned char>(s[3])) ||
      !std::isdigit(static_cast<unsigned char>(s[4]))) {
    throw ConfigError(fmt::format("calendar time '{}' is not HH:MM", s));
  }
  const int h = (s[0] - '0') * 10 + (s[1] - '0');
  const int m = (s[3] - '0') * 10 + (s[4] - '0');
  if (m > 59 || h > 24 || (h == 24 && m != 0)) {
    throw ConfigError(fmt::format("calendar time '{}' out of range", s));
  }
  return h * 60 + m;
}

std::string format_hhmm(int minutes) { return fmt::format("{:02}:{:02}", minutes / 60, minutes % 60); }

}  // namespace

void CalendarParams::validate() const {
  if (granule_minutes <= 0 || kMinutesPerDay % granule_minutes != 0) {
    throw ConfigError("calendar granule must be a positive divisor of 1440 minutes");
  }
  if (!(confidence >= 0.0 && confidence <= 1.0)) throw ConfigError("confidence must lie in [0, 1]");
  if (!(support >= 0.0 && support <= 1.0)) throw ConfigError("support must lie in [0, 1]");
}

WeeklyCalendar::WeeklyCalendar(std::string resource, int granule_minutes)
    : resource_(std::move(resource)), granule_minutes_(granule_minutes) {
  if (granule_minutes <= 0 || kMinutesPerDay % granule_minutes != 0) {
    throw ConfigError("calendar granule must be a positive divisor of 1440 minutes");
  }
  working_.assign(static_cast<std::size_t>(7 * kMinutesPerDay / granule_minutes), 0);
}

WeeklyCalendar WeeklyCalendar::always_available(std::string resource, int granule_minutes) {
  WeeklyCalendar cal(std::move(resource), granule_minutes);
  std::fill(cal.working_.begin(), cal.working_.end(), 1);
  return cal;
}

std::size_t WeeklyCalendar::working_slot_count() const {
  return static_cast<std::size_t>(std::count(working_.begin(), working_.end(), 1));
}

std::size_t WeeklyCalendar::slot_of(TimeInstant t) const {
  return static_cast<std::size_t>(seconds_into_week(t) / (granule_minutes_ * kSecondsPerMinute));
}

std::vector<std::pair<Seconds, Seconds>> WeeklyCalendar::weekly_spans() const {
  std::vector<std::pair<Seconds, Seconds>> spans;
  const Seconds step = granule_minutes_ * kSecondsPerMinute;
  for (std::size_t s = 0; s < working_.size(); ++s) {
    if (!working_[s]) continue;
    const Seconds from = static_cast<Seconds>(s) * step;
    if (!spans.empty() && spans.back().second == from) {
      spans.back().second = from + step;
    } else {
      spans.emplace_back(from, from + step);
    }
  }
  return spans;
}

WeeklyCalendar discover_calendar(const EventLog& log, std::string_view resource,
                                 const CalendarParams& params) {
  params.validate();
  std::vector<TimeInstant> observations;
  for (const ActivityInstance& inst : log.instances()) {
    if (inst.resource == resource) add_observations(inst, observations);
  }
  if (observations.empty()) {
    throw DataError(fmt::format("resource '{}' has no instances in the log", resource));
  }
  return calendar_from_observations(std::string(resource), observations, params);
}

CalendarMap discover_calendars(const EventLog& log, const CalendarParams& params,
                               const CalendarMap& overrides, CalendarStats* stats) {
  params.validate();
  std::map<std::string, std::vector<TimeInstant>, std::less<>> observations;
  for (const ActivityInstance& inst : log.instances()) {
    add_observations(inst, observations[inst.resource]);
  }

  std::vector<std::string> to_discover;
  CalendarMap out;
  CalendarStats local;
  for (const auto& [resource, obs] : observations) {
    if (auto it = overrides.find(resource); it != overrides.end()) {
      out.emplace(resource, it->second);
      ++local.overridden;
    } else if (resource == kUnknownResource) {
      out.emplace(resource, WeeklyCalendar::always_available(resource, params.granule_minutes));
    } else {
      to_discover.push_back(resource);
    }
  }
  for (const auto& [resource, cal] : overrides) {
    if (!observations.contains(resource)) ++local.unused_overrides;
  }

  std::vector<WeeklyCalendar> discovered(to_discover.size());
  const auto count = static_cast<std::ptrdiff_t>(to_discover.size());
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const std::string& r = to_discover[static_cast<std::size_t>(i)];
    discovered[static_cast<std::size_t>(i)] =
        calendar_from_observations(r, observations.find(r)->second, params);
  }
  for (auto& cal : discovered) out.emplace(cal.resource(), std::move(cal));
  local.discovered = discovered.size();
  if (stats) *stats = local;
  return out;
}

AbsoluteAvailability expand_calendar(const WeeklyCalendar& cal, TimeInterval horizon) {
  AbsoluteAvailability out{cal.resource(), {}};
  if (horizon.empty()) return out;
  const auto spans = cal.weekly_spans();
  std::vector<TimeInterval> pieces;
  for (TimeInstant week = week_start(horizon.start); week < horizon.end; week = week + kSecondsPerWeek) {
    for (const auto& [from, to] : spans) {
      TimeInstant s = std::max(week + from, horizon.start);
      TimeInstant e = std::min(week + to, horizon.end);
      if (s < e) pieces.push_back({s, e});
    }
  }
  out.available = IntervalSet::from_unsorted(std::move(pieces));
  return out;
}

AvailabilityMap expand_calendars(const CalendarMap& calendars, TimeInterval horizon) {
  AvailabilityMap out;
  for (const auto& [resource, cal] : calendars) {
    out.emplace(resource, expand_calendar(cal, horizon).available);
  }
  return out;
}

CalendarMap parse_calendar_overrides(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("calendar overrides must be a JSON object");
  CalendarMap out;
  for (const auto& [resource, ranges] : j.items()) {
    if (!ranges.is_array()) {
      throw ConfigError(fmt::format("calendar for '{}' must be an array of ranges", resource));
    }
    WeeklyCalendar cal(resource, 1);
    for (const auto& range : ranges) {
      if (!range.is_object() || !range.contains("day") || !range.contains("from") ||
          !range.contains("to")) {
        throw ConfigError(fmt::format("calendar range for '{}' needs day, from and to", resource));
      }
      if (!range.at("day").is_string()) throw ConfigError("calendar day must be a string");
      std::string day = range.at("day").get<std::string>();
      std::transform(day.begin(), day.end(), day.begin(),
                     [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
      auto it = std::find(kDayNames.begin(), kDayNames.end(), day.substr(0, 3));
      if (day.size() < 3 || it == kDayNames.end()) {
        throw ConfigError(fmt::format("unknown calendar day '{}'", day));
      }
      const int from = parse_hhmm(range.at("from"), "from");
      const int to = parse_hhmm(range.at("to"), "to");
      if (to <= from) {
        throw ConfigError(fmt::format("calendar range for '{}' ends before it starts", resource));
      }
      const auto day_index = static_cast<std::size_t>(it - kDayNames.begin());
      for (int m = from; m < to; ++m) {
        cal.set_working(day_index * kMinutesPerDay + static_cast<std::size_t>(m), true);
      }
    }
    out.emplace(resource, std::move(cal));
  }
  return out;
}

CalendarMap load_calendar_overrides(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open calendar file '{}'", path.string()));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("malformed calendar file '{}': {}", path.string(), e.what()));
  }
  return parse_calendar_overrides(j);
}

nlohmann::ordered_json calendars_to_json(const CalendarMap& calendars) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [resource, cal] : calendars) {
    nlohmann::ordered_json ranges = nlohmann::ordered_json::array();
    for (auto [from, to] : cal.weekly_spans()) {
      // Split spans at midnight so each range names a single day.
      while (from < to) {
        const Seconds day = from / kSecondsPerDay;
        const Seconds day_end = std::min(to, (day + 1) * kSecondsPerDay);
        ranges.push_back({{"day", kDayNames[static_cast<std::size_t>(day)]},
                          {"from", format_hhmm(static_cast<int>((from % kSecondsPerDay) / 60))},
                          {"to", format_hhmm(static_cast<int>((day_end - day * kSecondsPerDay) / 60))}});
        from = day_end;
      }
    }
    out[resource] = std::move(ranges);
  }
  return out;
}

}  // namespace wtm
