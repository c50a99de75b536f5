#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace wtm {

using Seconds = std::int64_t;

inline constexpr Seconds kSecondsPerMinute = 60;
inline constexpr Seconds kSecondsPerHour = 3600;
inline constexpr Seconds kSecondsPerDay = 86400;
inline constexpr Seconds kSecondsPerWeek = 7 * kSecondsPerDay;

// UTC instant at one-second resolution, counted from the Unix epoch.
struct TimeInstant {
  Seconds seconds = 0;

  constexpr TimeInstant() = default;
  constexpr explicit TimeInstant(Seconds s) : seconds(s) {}

  constexpr auto operator<=>(const TimeInstant&) const = default;

  constexpr TimeInstant operator+(Seconds d) const { return TimeInstant{seconds + d}; }
  constexpr TimeInstant operator-(Seconds d) const { return TimeInstant{seconds - d}; }
  constexpr Seconds operator-(TimeInstant other) const { return seconds - other.seconds; }
};

// Half-open span [start, end). Zero-length spans are legal and count as empty.
struct TimeInterval {
  TimeInstant start;
  TimeInstant end;

  TimeInterval() = default;
  TimeInterval(TimeInstant s, TimeInstant e);

  constexpr Seconds duration() const { return end - start; }
  constexpr bool empty() const { return end <= start; }
  constexpr bool contains(TimeInstant t) const { return start <= t && t < end; }

  bool operator==(const TimeInterval&) const = default;
};

enum class TimestampFormat {
  Iso8601,     // 2023-01-02T09:00:00Z, 2023/01/02 09:00:00.000, offsets like +02:00
  EpochSeconds
};

std::optional<TimestampFormat> parse_timestamp_format(std::string_view tag);
std::string_view to_string(TimestampFormat f);

struct TimestampParse {
  TimeInstant instant;
  bool truncated_subsecond = false;  // fractional seconds were dropped
  bool assumed_utc = false;          // no zone designator present
};

// Returns nullopt when the text is not a valid timestamp in the given format.
std::optional<TimestampParse> parse_timestamp(std::string_view text,
                                              TimestampFormat format = TimestampFormat::Iso8601);

TimeInstant make_instant(int year, unsigned month, unsigned day, int hour = 0, int minute = 0,
                         int second = 0);

std::string format_iso8601(TimeInstant t);

// "1101d 5h 34m" style rendering; sub-minute totals render as "42s".
std::string format_duration(Seconds s);

// Monday-based weekday, 0 = Monday ... 6 = Sunday.
int weekday_of(TimeInstant t);

// Seconds elapsed since Monday 00:00 UTC of the week containing t.
Seconds seconds_into_week(TimeInstant t);

// Monday 00:00 UTC of the week containing t.
TimeInstant week_start(TimeInstant t);

}  // namespace wtm
