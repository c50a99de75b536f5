#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wtm/time.hpp"

namespace wtm {

// Label given to instances whose resource cell was empty. Such instances never
// take part in contention, prioritization, batching or unavailability claims.
inline constexpr std::string_view kUnknownResource = "__UNKNOWN__";

using InstanceId = std::size_t;

enum class EnablementSource : std::uint8_t {
  Unset,        // not yet computed
  Input,        // supplied by the log
  Predecessor,  // completion of the closest non-concurrent predecessor
  CaseStart     // no enabling predecessor; enabled at its own start
};

std::string_view to_string(EnablementSource s);

struct ActivityInstance {
  std::string case_id;
  std::string activity;
  std::string resource;
  std::optional<TimeInstant> enabled;
  TimeInstant started;
  TimeInstant completed;
  EnablementSource enablement_source = EnablementSource::Unset;

  bool has_known_resource() const { return resource != kUnknownResource; }

  // Requires `enabled`; an unset enablement yields an empty waiting interval.
  TimeInterval waiting() const { return {enabled.value_or(started), started}; }
  TimeInterval processing() const { return {started, completed}; }
};

struct CaseSpan {
  std::string id;
  InstanceId begin = 0;
  InstanceId end = 0;

  std::size_t size() const { return end - begin; }
};

// Immutable collection of activity instances grouped by case. Instances are
// stored contiguously per case, cases sorted by id, and each case ordered by
// (started, completed, activity); resource and enablement break any remaining
// tie so the order does not depend on input row order.
class EventLog {
 public:
  EventLog() = default;
  explicit EventLog(std::vector<ActivityInstance> instances);

  std::span<const ActivityInstance> instances() const { return instances_; }
  const ActivityInstance& operator[](InstanceId id) const { return instances_[id]; }
  std::size_t size() const { return instances_.size(); }
  bool empty() const { return instances_.empty(); }

  std::span<const CaseSpan> cases() const { return cases_; }
  std::size_t case_count() const { return cases_.size(); }

  // Sorted, de-duplicated resource labels.
  std::vector<std::string> resources() const;

  // [earliest enablement or start, latest completion); empty for an empty log.
  TimeInterval horizon() const;

  // Same instances and order, with enablement replaced. Both vectors must have size().
  EventLog with_enablement(std::span<const std::optional<TimeInstant>> enabled,
                           std::span<const EnablementSource> sources) const;

 private:
  std::vector<ActivityInstance> instances_;
  std::vector<CaseSpan> cases_;
};

}  // namespace wtm
