#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wtm/event_log.hpp"
#include "wtm/interval_set.hpp"

namespace wtm {

struct BatchingParams {
  Seconds gap_tolerance = 0;       // max idle time between consecutive members
  std::size_t min_batch_size = 2;

  void validate() const;
};

struct Batch {
  std::string activity;
  std::string resource;
  std::vector<InstanceId> members;  // in execution order
  TimeInstant accumulation_end;     // latest member enablement
};

struct BatchIndex {
  std::vector<Batch> batches;
  std::vector<std::optional<std::size_t>> batch_of;  // per instance

  const Batch* find(InstanceId id) const {
    if (id >= batch_of.size() || !batch_of[id]) return nullptr;
    return &batches[*batch_of[id]];
  }
};

// Groups same-activity executions of one resource that are consecutive in the
// resource's timeline, each starting no later than the previous members'
// latest completion plus the gap tolerance, and all enabled no later than the
// first member starts. Requires enablement to be set on every instance.
// Instances without a known resource are never batched.
BatchIndex detect_batches(const EventLog& log, const BatchingParams& params = {});

// [enabled, accumulation_end) restricted to the instance's waiting interval.
IntervalSet batching_interval(const ActivityInstance& inst, const Batch& batch);

}  // namespace wtm
