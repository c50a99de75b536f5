#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "test_support.hpp"
#include "wtm/calendars.hpp"
#include "wtm/error.hpp"

using namespace wtm;
using wtm::testing::inst;
using wtm::testing::kMonday;
using wtm::testing::set_of;

namespace {

constexpr Seconds kHour = kSecondsPerHour;

std::size_t slot(int day, int hour) { return static_cast<std::size_t>(day * 24 + hour); }

}  // namespace

TEST_CASE("dense Monday office hours") {
  std::vector<ActivityInstance> rows;
  for (int week = 0; week < 8; ++week) {
    for (int k = 0; k < 16; ++k) {
      const Seconds s = week * kSecondsPerWeek + 9 * kHour + k * 1800;
      rows.push_back(inst("c" + std::to_string(week * 16 + k), "a", "R", s, s + 1800, {}, kMonday));
    }
  }
  const WeeklyCalendar cal = discover_calendar(EventLog(rows), "R");
  CHECK(cal.working_slot_count() == 8);
  for (int h = 9; h < 17; ++h) CHECK(cal.is_working(slot(0, h)));
  CHECK_FALSE(cal.is_working(slot(0, 8)));
  CHECK_FALSE(cal.is_working(slot(0, 17)));
  CHECK(cal.weekly_spans() == std::vector<std::pair<Seconds, Seconds>>{{9 * kHour, 17 * kHour}});
}

TEST_CASE("single observation works only its slot") {
  // Starts and ends inside the same hour on Wednesday.
  const EventLog log({inst("c", "a", "R", 2 * kSecondsPerDay + 14 * kHour + 60,
                           2 * kSecondsPerDay + 14 * kHour + 600, {}, kMonday)});
  const WeeklyCalendar cal = discover_calendar(log, "R");
  CHECK(cal.working_slot_count() == 1);
  CHECK(cal.is_working(slot(2, 14)));
}

TEST_CASE("completion counts toward the preceding second") {
  // Ends exactly at 15:00: the 15:00 slot holds no evidence.
  const EventLog log({inst("c", "a", "R", 14 * kHour, 15 * kHour, {}, kMonday)});
  const WeeklyCalendar cal = discover_calendar(log, "R");
  CHECK(cal.working_slot_count() == 1);
  CHECK(cal.is_working(slot(0, 14)));
}

TEST_CASE("uniform round-the-clock activity") {
  std::vector<ActivityInstance> rows;
  for (Seconds h = 0; h < 4 * 7 * 24; ++h) rows.push_back(inst("c" + std::to_string(h), "a", "R", h * kHour, h * kHour + 600, {}, kMonday));
  const WeeklyCalendar cal = discover_calendar(EventLog(rows), "R");
  CHECK(cal.working_slot_count() == cal.slot_count());
}

TEST_CASE("confidence cut and support relaxation") {
  // Slot A has 20 observations, slot B has 2.
  std::vector<ActivityInstance> rows;
  for (int i = 0; i < 10; ++i) rows.push_back(inst("a" + std::to_string(i), "a", "R", 9 * kHour, 9 * kHour + 60, {}, kMonday));
  rows.push_back(inst("b", "a", "R", 13 * kHour, 13 * kHour + 60, {}, kMonday));
  const EventLog log(rows);
  CHECK(discover_calendar(log, "R", {60, 0.05, 0.1}).working_slot_count() == 2);
  CHECK(discover_calendar(log, "R", {60, 0.5, 0.1}).working_slot_count() == 1);
  // Coverage 20/22 < 0.95 forces the cut down until slot B joins.
  CHECK(discover_calendar(log, "R", {60, 0.5, 0.95}).working_slot_count() == 2);
  CHECK_THROWS_AS(discover_calendar(log, "nobody"), DataError);
}

TEST_CASE("granule and parameter validation") {
  CHECK_THROWS_AS(CalendarParams({7, 0.1, 0.1}).validate(), ConfigError);
  CHECK_THROWS_AS(CalendarParams({0, 0.1, 0.1}).validate(), ConfigError);
  CHECK_THROWS_AS(CalendarParams({60, 1.5, 0.1}).validate(), ConfigError);
  CHECK_THROWS_AS(CalendarParams({60, 0.1, -0.1}).validate(), ConfigError);
  CHECK_NOTHROW(CalendarParams({15, 0.1, 0.1}).validate());
  CHECK(WeeklyCalendar("R", 15).slot_count() == 7 * 96);
}

TEST_CASE("expansion over a horizon") {
  const TimeInterval two_weeks{kMonday, kMonday + 2 * kSecondsPerWeek};
  const auto all = expand_calendar(WeeklyCalendar::always_available("R"), two_weeks);
  CHECK(all.available == IntervalSet{two_weeks});

  WeeklyCalendar mon("R", 60);
  for (int h = 9; h < 17; ++h) mon.set_working(slot(0, h), true);
  const auto m = expand_calendar(mon, two_weeks);
  CHECK(m.available == set_of({{9 * kHour, 17 * kHour}, {kSecondsPerWeek + 9 * kHour, kSecondsPerWeek + 17 * kHour}}, kMonday));

  // A horizon starting mid-week and mid-slot is clipped.
  const TimeInterval partial{kMonday + 10 * kHour + 30, kMonday + kSecondsPerWeek + 12 * kHour};
  CHECK(expand_calendar(mon, partial).available ==
        set_of({{10 * kHour + 30, 17 * kHour}, {kSecondsPerWeek + 9 * kHour, kSecondsPerWeek + 12 * kHour}}, kMonday));

  CHECK(expand_calendar(mon, TimeInterval{kMonday, kMonday}).available.empty());
}

TEST_CASE("override parsing") {
  const CalendarMap m = parse_calendar_overrides(nlohmann::json::parse(
      R"({"R1": [{"day": "MON", "from": "09:00", "to": "17:00"}, {"day": "sat", "from": "10:15", "to": "24:00"}]})"));
  REQUIRE(m.size() == 1);
  const WeeklyCalendar& c = m.at("R1");
  CHECK(c.granule_minutes() == 1);
  CHECK(c.working_slot_count() == 8 * 60 + 13 * 60 + 45);
  CHECK(c.is_working_at(kMonday + 9 * kHour));
  CHECK_FALSE(c.is_working_at(kMonday + 17 * kHour));
  CHECK(c.is_working_at(kMonday + 5 * kSecondsPerDay + 10 * kHour + 15 * 60));
  CHECK_FALSE(c.is_working_at(kMonday + 5 * kSecondsPerDay + 10 * kHour + 14 * 60));

  CHECK(parse_calendar_overrides(nlohmann::json::object()).empty());
  for (const char* bad : {R"([])", R"({"R": {}})", R"({"R": [{"day": "XYZ", "from": "09:00", "to": "10:00"}]})",
                          R"({"R": [{"day": "MON", "from": "9:00", "to": "10:00"}]})",
                          R"({"R": [{"day": "MON", "from": "10:00", "to": "09:00"}]})",
                          R"({"R": [{"day": "MON", "from": "10:00", "to": "24:30"}]})",
                          R"({"R": [{"day": "MON", "from": "10:00"}]})"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_calendar_overrides(nlohmann::json::parse(bad)), ConfigError);
  }
}

TEST_CASE("overrides win, unknown resources work around the clock, unused overrides are counted") {
  const EventLog log({inst("c1", "a", "R1", 9 * kHour, 10 * kHour, {}, kMonday),
                      inst("c2", "a", "", 3 * kHour, 4 * kHour, {}, kMonday),
                      inst("c3", "a", "R2", 9 * kHour, 10 * kHour, {}, kMonday)});
  const CalendarMap overrides = parse_calendar_overrides(nlohmann::json::parse(
      R"({"R1": [{"day": "TUE", "from": "00:00", "to": "01:00"}], "Ghost": []})"));
  CalendarStats stats;
  const CalendarMap cals = discover_calendars(log, {}, overrides, &stats);
  CHECK(cals.size() == 3);
  CHECK(cals.at("R1") == overrides.at("R1"));
  CHECK(cals.at(std::string(kUnknownResource)).working_slot_count() == cals.at(std::string(kUnknownResource)).slot_count());
  CHECK(cals.at("R2").working_slot_count() == 1);
  CHECK(stats.overridden == 1);
  CHECK(stats.discovered == 1);
  CHECK(stats.unused_overrides == 1);
}

TEST_CASE("dump and reload round trip") {
  std::vector<ActivityInstance> rows;
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto s = static_cast<Seconds>(rng() % (3 * kSecondsPerWeek));
    rows.push_back(inst("c" + std::to_string(i), "a", i % 2 ? "R1" : "R2", s, s + 900, {}, kMonday));
  }
  const CalendarMap cals = discover_calendars(EventLog(rows), {30, 0.3, 0.5}, {});
  const auto dumped = calendars_to_json(cals);
  const auto path = std::filesystem::temp_directory_path() / "wtm_calendar_roundtrip.json";
  std::ofstream(path) << dumped.dump(2);
  const CalendarMap back = load_calendar_overrides(path);
  std::filesystem::remove(path);
  REQUIRE(back.size() == cals.size());
  for (const auto& [r, cal] : cals) {
    const WeeklyCalendar& b = back.at(r);
    for (Seconds m = 0; m < kSecondsPerWeek; m += 60) {
      REQUIRE(cal.is_working_at(kMonday + m) == b.is_working_at(kMonday + m));
    }
  }
  CHECK(calendars_to_json(back) == dumped);
}

TEST_CASE("discovery properties on random logs") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 100; ++round) {
    std::vector<ActivityInstance> rows;
    const int n = 1 + static_cast<int>(rng() % 60);
    for (int i = 0; i < n; ++i) {
      const auto s = static_cast<Seconds>(rng() % (2 * kSecondsPerWeek));
      rows.push_back(inst("c" + std::to_string(i), "a", "R", s, s + static_cast<Seconds>(rng() % 7200), {}, kMonday));
    }
    const EventLog log(rows);
    const CalendarParams params{30, static_cast<double>(rng() % 100) / 100.0, static_cast<double>(rng() % 100) / 100.0};
    const WeeklyCalendar cal = discover_calendar(log, "R", params);
    REQUIRE(cal == discover_calendar(log, "R", params));

    std::size_t covered = 0, total = 0;
    for (const ActivityInstance& a : log.instances()) {
      for (TimeInstant t : {a.started, a.completed > a.started ? a.completed - 1 : a.completed}) {
        ++total;
        covered += cal.is_working_at(t);
      }
    }
    REQUIRE(static_cast<double>(covered) >= params.support * static_cast<double>(total));

    const auto avail = expand_calendar(cal, log.horizon());
    REQUIRE(avail.available.total_duration() <= log.horizon().duration());
    REQUIRE(interval_subtract(avail.available, IntervalSet{log.horizon()}).empty());
  }
}
