#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "wtm/event_log.hpp"
#include "wtm/interval_set.hpp"

namespace wtm {

struct CalendarParams {
  int granule_minutes = 60;
  double confidence = 0.1;
  double support = 0.1;

  void validate() const;
};

// Slot index 0 is Monday 00:00; slots run through the week in granule steps.
class WeeklyCalendar {
 public:
  WeeklyCalendar() = default;
  WeeklyCalendar(std::string resource, int granule_minutes);

  static WeeklyCalendar always_available(std::string resource, int granule_minutes = 60);

  const std::string& resource() const { return resource_; }
  int granule_minutes() const { return granule_minutes_; }
  std::size_t slot_count() const { return working_.size(); }
  std::size_t slots_per_day() const { return working_.size() / 7; }

  bool is_working(std::size_t slot) const { return working_[slot] != 0; }
  void set_working(std::size_t slot, bool on) { working_[slot] = on ? 1 : 0; }
  std::size_t working_slot_count() const;

  std::size_t slot_of(TimeInstant t) const;
  bool is_working_at(TimeInstant t) const { return is_working(slot_of(t)); }

  // Working spans as offsets from Monday 00:00, merged; used for tiling and dumps.
  std::vector<std::pair<Seconds, Seconds>> weekly_spans() const;

  bool operator==(const WeeklyCalendar&) const = default;

 private:
  std::string resource_;
  int granule_minutes_ = 60;
  std::vector<unsigned char> working_;
};

struct AbsoluteAvailability {
  std::string resource;
  IntervalSet available;
};

using CalendarMap = std::map<std::string, WeeklyCalendar, std::less<>>;
using AvailabilityMap = std::map<std::string, IntervalSet, std::less<>>;

// Slot frequencies come from the start and completion instants of the
// resource's instances (a completion counts toward the slot holding the
// preceding second). A slot works when its frequency reaches confidence x the
// busiest slot; the cut is halved up to 10 times while working slots cover
// less than `support` of all observations. Throws DataError for a resource
// absent from the log.
WeeklyCalendar discover_calendar(const EventLog& log, std::string_view resource,
                                 const CalendarParams& params = {});

struct CalendarStats {
  std::size_t discovered = 0;
  std::size_t overridden = 0;
  std::size_t unused_overrides = 0;  // override for a resource absent from the log
};

// One calendar per resource in the log: overrides first, then 24/7 for the
// unknown-resource label, then discovery.
CalendarMap discover_calendars(const EventLog& log, const CalendarParams& params,
                               const CalendarMap& overrides, CalendarStats* stats = nullptr);

AbsoluteAvailability expand_calendar(const WeeklyCalendar& cal, TimeInterval horizon);

AvailabilityMap expand_calendars(const CalendarMap& calendars, TimeInterval horizon);

// {"R1": [{"day": "MON", "from": "09:00", "to": "17:00"}], ...}
// Overrides use one-minute slots so any HH:MM boundary is exact. Throws ConfigError.
CalendarMap parse_calendar_overrides(const nlohmann::json& j);
CalendarMap load_calendar_overrides(const std::filesystem::path& path);

// Same layout as the override file, so a dump can be fed back as overrides.
nlohmann::ordered_json calendars_to_json(const CalendarMap& calendars);

}  // namespace wtm
