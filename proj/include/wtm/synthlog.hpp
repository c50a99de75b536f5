#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "wtm/decomposition.hpp"
#include "wtm/event_log.hpp"
#include "wtm/pipeline.hpp"

namespace wtm::synth {

struct CauseFlags {
  std::array<bool, kCauseCount> on{};

  bool operator[](Cause c) const { return on[static_cast<std::size_t>(c)]; }
  void set(Cause c, bool v = true) { on[static_cast<std::size_t>(c)] = v; }
  bool any() const;

  // Bit i is cause i in dominance order (bit 0 batching ... bit 4 extraneous).
  static CauseFlags from_mask(unsigned mask);
  unsigned mask() const;

  // Comma-separated cause names; "none" when empty. parse() accepts the same.
  std::string to_string() const;
  static CauseFlags parse(std::string_view text);

  bool operator==(const CauseFlags&) const = default;
};

// Durations of the five sequential template activities
// Receive -> Check -> Assess -> Decide -> Notify. Each must lie in [10, 60] minutes.
struct TemplateDurations {
  std::array<Seconds, 5> seconds = {30 * 60, 30 * 60, 60 * 60, 30 * 60, 30 * 60};
};

struct InjectionSpec {
  CauseFlags causes;
  std::size_t n_cases = 20;
  std::uint64_t seed = 1;
  // Reproduce the cross-cause side effects seen with sparse, low-availability
  // simulations: long extraneous delays outside observed working hours,
  // out-of-turn work during extraneous delays when contention is injected, and
  // instances collected into a batch while waiting on an unavailable resource
  // when both contention and unavailability are injected.
  bool reproduce_artifacts = false;
  TemplateDurations durations;

  // Throws std::invalid_argument; n_cases must fit one lane per injected cause.
  void validate() const;
  std::size_t min_cases() const;
};

struct Lane {
  std::string kind;  // cause name, or "clean"
  TimeInstant start;
  std::vector<std::string> case_ids;
};

struct GroundTruth {
  CauseFlags injected;
  std::size_t n_cases = 0;
  std::uint64_t seed = 0;
  bool reproduce_artifacts = false;
  std::vector<Lane> lanes;

  nlohmann::ordered_json to_json() const;
};

struct SyntheticLog {
  std::vector<ActivityInstance> rows;  // in emitted (seed-shuffled) order
  GroundTruth truth;

  EventLog log() const { return EventLog(rows); }
  // Columns case_id,activity,resource,start_time,end_time (the default mapping).
  std::string to_csv() const;
};

SyntheticLog generate(const InjectionSpec& spec);

// Presence protocol: a cause counts as detected when at least one transition
// instance carries `min_instance_seconds` or more of it.
inline constexpr Seconds kPresenceMinInstanceSeconds = 60;

CauseFlags detected_causes(const DecompositionTable& decompositions,
                           Seconds min_instance_seconds = kPresenceMinInstanceSeconds);

struct DetectionScore {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::size_t true_negatives = 0;

  void add(const CauseFlags& injected, const CauseFlags& detected);
  double precision() const;
  double recall() const;
};

// Cross-cause false positives that sparse calendars and low availability are
// known to produce: unavailability alongside extraneous delay, prioritization
// alongside extraneous delay, batching alongside contention plus unavailability.
bool is_documented_false_positive(Cause detected, const CauseFlags& injected);

}  // namespace wtm::synth
