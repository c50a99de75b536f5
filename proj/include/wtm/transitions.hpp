#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wtm/concurrency.hpp"
#include "wtm/event_log.hpp"

namespace wtm {

struct TransitionInstance {
  InstanceId source = 0;
  InstanceId target = 0;
  TimeInterval waiting;  // [enabled(target), started(target))
};

struct Transition {
  std::string source_activity;
  std::string target_activity;
  std::vector<TransitionInstance> instances;  // ordered by target id
  double case_frequency = 0.0;
  std::size_t total_frequency = 0;
  Seconds total_duration = 0;
};

// One transition instance per instance with an enabling predecessor, grouped
// by (source activity, target activity). Sorted by total duration desc, then
// total frequency desc, then label pair ascending.
std::vector<Transition> discover_transitions(const EnablementResult& enablement);

std::size_t transition_instance_count(const std::vector<Transition>& transitions);

}  // namespace wtm
