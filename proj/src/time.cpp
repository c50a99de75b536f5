#include "wtm/time.hpp"

#include <charconv>
#include <chrono>
#include <stdexcept>

#include <fmt/format.h>

namespace wtm {
namespace {

constexpr Seconds floor_div(Seconds a, Seconds b) {
  Seconds q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

constexpr Seconds floor_mod(Seconds a, Seconds b) { return a - floor_div(a, b) * b; }

// Small cursor over the timestamp text; every reader returns false on mismatch.
struct Cursor {
  std::string_view s;
  std::size_t pos = 0;

  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }

  bool digits(std::size_t count, int& out) {
    if (pos + count > s.size()) return false;
    int v = 0;
    for (std::size_t i = 0; i < count; ++i) {
      char c = s[pos + i];
      if (c < '0' || c > '9') return false;
      v = v * 10 + (c - '0');
    }
    out = v;
    pos += count;
    return true;
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }
};

std::string_view trim(std::string_view v) {
  while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
  while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.remove_suffix(1);
  return v;
}

std::optional<TimestampParse> parse_iso(std::string_view text) {
  Cursor c{trim(text)};
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  if (!c.digits(4, year)) return std::nullopt;
  char date_sep = c.peek();
  if (date_sep != '-' && date_sep != '/') return std::nullopt;
  ++c.pos;
  if (!c.digits(2, month) || !c.accept(date_sep) || !c.digits(2, day)) return std::nullopt;
  if (!c.accept('T') && !c.accept(' ')) return std::nullopt;
  if (!c.digits(2, hour) || !c.accept(':') || !c.digits(2, minute)) return std::nullopt;
  if (c.accept(':') && !c.digits(2, second)) return std::nullopt;

  TimestampParse result;
  if (c.accept('.') || c.accept(',')) {
    std::size_t start = c.pos;
    while (!c.done() && c.peek() >= '0' && c.peek() <= '9') ++c.pos;
    if (c.pos == start) return std::nullopt;
    for (std::size_t i = start; i < c.pos; ++i) {
      if (c.s[i] != '0') {
        result.truncated_subsecond = true;
        break;
      }
    }
  }

  Seconds offset = 0;
  if (c.done()) {
    result.assumed_utc = true;
  } else if (c.accept('Z') || c.accept('z')) {
  } else if (c.peek() == '+' || c.peek() == '-') {
    int sign = c.peek() == '-' ? -1 : 1;
    ++c.pos;
    int oh = 0, om = 0;
    if (!c.digits(2, oh)) return std::nullopt;
    c.accept(':');
    if (!c.done() && !c.digits(2, om)) return std::nullopt;
    if (oh > 23 || om > 59) return std::nullopt;
    offset = sign * (oh * kSecondsPerHour + om * kSecondsPerMinute);
  } else {
    return std::nullopt;
  }
  if (!c.done()) return std::nullopt;

  if (hour > 23 || minute > 59 || second > 59) return std::nullopt;
  using namespace std::chrono;
  year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                     std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;

  result.instant = make_instant(year, month, day, hour, minute, second) - offset;
  return result;
}

std::optional<TimestampParse> parse_epoch(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  TimestampParse result;
  std::string_view whole = text;
  std::string_view fraction;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    whole = text.substr(0, dot);
    fraction = text.substr(dot + 1);
    if (fraction.empty()) return std::nullopt;
    for (char ch : fraction) {
      if (ch < '0' || ch > '9') return std::nullopt;
      if (ch != '0') result.truncated_subsecond = true;
    }
  }
  Seconds value = 0;
  auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), value);
  if (ec != std::errc{} || ptr != whole.data() + whole.size()) return std::nullopt;
  // Truncation is toward the past, so negative fractional values step back one second.
  if (result.truncated_subsecond && !whole.empty() && whole.front() == '-') value -= 1;
  result.instant = TimeInstant{value};
  return result;
}

}  // namespace

TimeInterval::TimeInterval(TimeInstant s, TimeInstant e) : start(s), end(e) {
  if (e < s) {
    throw std::invalid_argument(
        fmt::format("interval end {} precedes start {}", e.seconds, s.seconds));
  }
}

std::optional<TimestampFormat> parse_timestamp_format(std::string_view tag) {
  if (tag == "iso8601" || tag == "ISO-8601" || tag == "iso") return TimestampFormat::Iso8601;
  if (tag == "epoch" || tag == "unix") return TimestampFormat::EpochSeconds;
  return std::nullopt;
}

std::string_view to_string(TimestampFormat f) {
  switch (f) {
    case TimestampFormat::Iso8601: return "iso8601";
    case TimestampFormat::EpochSeconds: return "epoch";
  }
  return "iso8601";
}

std::optional<TimestampParse> parse_timestamp(std::string_view text, TimestampFormat format) {
  switch (format) {
    case TimestampFormat::Iso8601: return parse_iso(text);
    case TimestampFormat::EpochSeconds: return parse_epoch(text);
  }
  return std::nullopt;
}

TimeInstant make_instant(int year, unsigned month, unsigned day, int hour, int minute,
                         int second) {
  using namespace std::chrono;
  sys_days d{std::chrono::year{year} / std::chrono::month{month} / std::chrono::day{day}};
  return TimeInstant{static_cast<Seconds>(d.time_since_epoch().count()) * kSecondsPerDay +
                     hour * kSecondsPerHour + minute * kSecondsPerMinute + second};
}

std::string format_iso8601(TimeInstant t) {
  using namespace std::chrono;
  Seconds days = floor_div(t.seconds, kSecondsPerDay);
  Seconds rem = t.seconds - days * kSecondsPerDay;
  year_month_day ymd{sys_days{std::chrono::days{days}}};
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                     rem / kSecondsPerHour, (rem % kSecondsPerHour) / kSecondsPerMinute,
                     rem % kSecondsPerMinute);
}

std::string format_duration(Seconds s) {
  std::string sign = s < 0 ? "-" : "";
  if (s < 0) s = -s;
  if (s < kSecondsPerMinute) return fmt::format("{}{}s", sign, s);
  Seconds d = s / kSecondsPerDay;
  Seconds h = (s % kSecondsPerDay) / kSecondsPerHour;
  Seconds m = (s % kSecondsPerHour) / kSecondsPerMinute;
  if (d > 0) return fmt::format("{}{}d {}h {}m", sign, d, h, m);
  if (h > 0) return fmt::format("{}{}h {}m", sign, h, m);
  return fmt::format("{}{}m", sign, m);
}

int weekday_of(TimeInstant t) {
  // 1970-01-01 was a Thursday (index 3 when Monday is 0).
  return static_cast<int>(floor_mod(floor_div(t.seconds, kSecondsPerDay) + 3, 7));
}

Seconds seconds_into_week(TimeInstant t) {
  return weekday_of(t) * kSecondsPerDay + floor_mod(t.seconds, kSecondsPerDay);
}

TimeInstant week_start(TimeInstant t) { return t - seconds_into_week(t); }

}  // namespace wtm
