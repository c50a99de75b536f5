#include "wtm/interval_set.hpp"

#include <algorithm>
#include <cassert>

#include <fmt/format.h>

namespace wtm {

IntervalSet::IntervalSet(TimeInterval single) {
  if (!single.empty()) intervals_.push_back(single);
}

IntervalSet::IntervalSet(std::initializer_list<TimeInterval> intervals)
    : IntervalSet(from_unsorted(std::vector<TimeInterval>(intervals))) {}

IntervalSet IntervalSet::from_unsorted(std::vector<TimeInterval> intervals) {
  std::erase_if(intervals, [](const TimeInterval& iv) { return iv.empty(); });
  std::sort(intervals.begin(), intervals.end(),
            [](const TimeInterval& x, const TimeInterval& y) { return x.start < y.start; });
  IntervalSet out;
  out.intervals_.reserve(intervals.size());
  for (const TimeInterval& iv : intervals) {
    if (!out.intervals_.empty() && iv.start <= out.intervals_.back().end) {
      out.intervals_.back().end = std::max(out.intervals_.back().end, iv.end);
    } else {
      out.intervals_.push_back(iv);
    }
  }
  return out;
}

IntervalSet IntervalSet::from_canonical(std::vector<TimeInterval> intervals) {
  assert(is_canonical(intervals));
  IntervalSet out;
  out.intervals_ = std::move(intervals);
  return out;
}

Seconds IntervalSet::total_duration() const {
  Seconds total = 0;
  for (const TimeInterval& iv : intervals_) total += iv.duration();
  return total;
}

bool IntervalSet::contains(TimeInstant t) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                             [](TimeInstant v, const TimeInterval& iv) { return v < iv.start; });
  if (it == intervals_.begin()) return false;
  return std::prev(it)->contains(t);
}

IntervalSet IntervalSet::clip(TimeInterval window) const {
  IntervalSet out;
  if (window.empty()) return out;
  // First member whose end lies beyond the window start.
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), window.start,
                             [](TimeInstant v, const TimeInterval& iv) { return v < iv.end; });
  for (; it != intervals_.end() && it->start < window.end; ++it) {
    TimeInterval piece{std::max(it->start, window.start), std::min(it->end, window.end)};
    if (!piece.empty()) out.intervals_.push_back(piece);
  }
  return out;
}

std::string IntervalSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (i) out += ",";
    out += fmt::format("[{},{})", intervals_[i].start.seconds, intervals_[i].end.seconds);
  }
  out += "}";
  return out;
}

bool is_canonical(std::span<const TimeInterval> intervals) {
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].empty()) return false;
    if (i > 0 && intervals[i].start <= intervals[i - 1].end) return false;
  }
  return true;
}

IntervalSet interval_intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<TimeInterval> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    TimeInstant lo = std::max(a[i].start, b[j].start);
    TimeInstant hi = std::min(a[i].end, b[j].end);
    if (lo < hi) out.push_back({lo, hi});
    if (a[i].end < b[j].end) {
      ++i;
    } else {
      ++j;
    }
  }
  // Pieces of two canonical inputs never touch each other.
  return IntervalSet::from_canonical(std::move(out));
}

IntervalSet interval_subtract(const IntervalSet& a, const IntervalSet& b) {
  std::vector<TimeInterval> out;
  std::size_t j = 0;
  for (const TimeInterval& iv : a) {
    TimeInstant cursor = iv.start;
    while (j < b.size() && b[j].end <= cursor) ++j;
    std::size_t k = j;
    while (k < b.size() && b[k].start < iv.end) {
      if (b[k].start > cursor) out.push_back({cursor, b[k].start});
      cursor = std::max(cursor, b[k].end);
      if (cursor >= iv.end) break;
      ++k;
    }
    if (cursor < iv.end) out.push_back({cursor, iv.end});
  }
  return IntervalSet::from_canonical(std::move(out));
}

IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<TimeInterval> merged;
  merged.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged),
             [](const TimeInterval& x, const TimeInterval& y) { return x.start < y.start; });
  return IntervalSet::from_unsorted(std::move(merged));
}

}  // namespace wtm
