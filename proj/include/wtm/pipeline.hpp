#pragma once

#include <cstddef>
#include <vector>

#include "wtm/analysis.hpp"
#include "wtm/batching.hpp"
#include "wtm/calendars.hpp"
#include "wtm/concurrency.hpp"
#include "wtm/decomposition.hpp"
#include "wtm/event_log.hpp"
#include "wtm/transitions.hpp"

namespace wtm {

struct AnalysisConfig {
  OracleThresholds oracle;
  CalendarParams calendar;
  BatchingParams batching;
  CalendarMap calendar_overrides;
  bool parallel = true;  // false runs the serial decomposition reference

  void validate() const;
};

struct Diagnostics {
  std::size_t clamped_enablements = 0;
  std::size_t supplied_enablements = 0;
  double multitasking_rate = 0.0;
  CalendarStats calendars;
};

struct AnalysisResult {
  DirectlyFollowsCounts counts;
  ConcurrencyRelation relation;
  EnablementResult enablement;  // enablement.log is the analyzed log
  std::vector<Transition> transitions;
  BatchIndex batches;
  CalendarMap calendars;
  AvailabilityMap availability;
  DecompositionTable decompositions;
  CteReport report;
  Diagnostics diagnostics;

  const EventLog& log() const { return enablement.log; }
};

// Transitions, then causes, then impact. Throws std::domain_error when the log
// has neither processing nor waiting time.
AnalysisResult analyze(const EventLog& log, const AnalysisConfig& config = {});

}  // namespace wtm
