#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wtm/batching.hpp"
#include "wtm/calendars.hpp"
#include "wtm/event_log.hpp"
#include "wtm/interval_set.hpp"
#include "wtm/transitions.hpp"

namespace wtm {

// Causes in dominance order: a second claimed by an earlier cause is never
// claimed by a later one.
enum class Cause : std::size_t { Batching, Contention, Prioritization, Unavailability, Extraneous };

inline constexpr std::size_t kCauseCount = 5;
inline constexpr std::array<Cause, kCauseCount> kAllCauses = {
    Cause::Batching, Cause::Contention, Cause::Prioritization, Cause::Unavailability,
    Cause::Extraneous};

std::string_view cause_name(Cause c);

struct WtDecomposition {
  InstanceId source = 0;
  InstanceId target = 0;
  TimeInterval waiting;
  std::array<IntervalSet, kCauseCount> by_cause;

  const IntervalSet& operator[](Cause c) const { return by_cause[static_cast<std::size_t>(c)]; }
  IntervalSet& operator[](Cause c) { return by_cause[static_cast<std::size_t>(c)]; }
  Seconds duration(Cause c) const { return (*this)[c].total_duration(); }
};

// Per-resource instance lists sorted by start. Read-only after construction,
// safe to query from many threads.
class ResourceIndex {
 public:
  explicit ResourceIndex(const EventLog& log);

  // Instances of `resource` whose processing may overlap `window`: a superset
  // bounded by the longest processing time of that resource.
  std::span<const InstanceId> candidates(std::string_view resource, TimeInterval window) const;

 private:
  struct Entry {
    std::vector<InstanceId> by_start;
    std::vector<TimeInstant> starts;
    Seconds max_processing = 0;
  };
  std::map<std::string, Entry, std::less<>> entries_;
};

struct DecompositionContext {
  const EventLog& log;  // enablement set on every instance
  const BatchIndex& batches;
  const ResourceIndex& resources;
  const AvailabilityMap& availability;
};

// Processing of other same-resource instances enabled at or before the
// instance's enablement, overlapping its waiting time.
IntervalSet raw_contention(InstanceId id, const DecompositionContext& ctx);

// Same, for instances enabled strictly after it.
IntervalSet raw_prioritization(InstanceId id, const DecompositionContext& ctx);

// Waiting time outside the resource's availability. A null availability means
// no calendar is known and nothing is attributed.
IntervalSet raw_unavailability(const ActivityInstance& inst, const IntervalSet* availability);

WtDecomposition decompose(const TransitionInstance& ti, const DecompositionContext& ctx);

// Decompositions aligned with `transitions` (outer) and their instances (inner).
using DecompositionTable = std::vector<std::vector<WtDecomposition>>;

// Reference implementation: one thread, transition by transition.
DecompositionTable decompose_all_serial(std::span<const Transition> transitions,
                                        const DecompositionContext& ctx);

// OpenMP over the flattened transition instances; identical output to the
// serial reference.
DecompositionTable decompose_all(std::span<const Transition> transitions,
                                 const DecompositionContext& ctx);

// Fraction of known-resource instances whose processing overlaps another
// instance's processing on the same resource.
double multitasking_rate(const EventLog& log, const ResourceIndex& resources);

}  // namespace wtm
