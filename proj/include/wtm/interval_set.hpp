#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "wtm/time.hpp"

namespace wtm {

// Canonical collection of half-open intervals: sorted by start, pairwise
// disjoint, no empty members, and no two members touching (touching spans are
// merged). Every way of building one goes through canonicalization, so a
// constructed IntervalSet always satisfies these invariants.
class IntervalSet {
 public:
  using const_iterator = std::vector<TimeInterval>::const_iterator;

  IntervalSet() = default;
  explicit IntervalSet(TimeInterval single);
  IntervalSet(std::initializer_list<TimeInterval> intervals);

  // Sorts and merges arbitrary (possibly overlapping or empty) intervals.
  static IntervalSet from_unsorted(std::vector<TimeInterval> intervals);

  // Wraps intervals that are already canonical; checked in debug builds.
  static IntervalSet from_canonical(std::vector<TimeInterval> intervals);

  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }
  const_iterator begin() const { return intervals_.begin(); }
  const_iterator end() const { return intervals_.end(); }
  const TimeInterval& operator[](std::size_t i) const { return intervals_[i]; }
  std::span<const TimeInterval> intervals() const { return intervals_; }

  Seconds total_duration() const;
  bool contains(TimeInstant t) const;

  // Portion of this set inside `window`; binary-searches so large sets stay cheap.
  IntervalSet clip(TimeInterval window) const;

  bool operator==(const IntervalSet&) const = default;

  std::string to_string() const;

 private:
  std::vector<TimeInterval> intervals_;
};

bool is_canonical(std::span<const TimeInterval> intervals);

IntervalSet interval_intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet interval_subtract(const IntervalSet& a, const IntervalSet& b);
IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b);

}  // namespace wtm
