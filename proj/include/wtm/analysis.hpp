#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "wtm/decomposition.hpp"
#include "wtm/event_log.hpp"
#include "wtm/transitions.hpp"

namespace wtm {

// pt / (pt + wt). Throws std::domain_error for negative inputs or pt + wt == 0.
double compute_cte(double total_pt, double total_wt);

// CTE once `removed_wt` of the waiting time is gone. With no processing time
// and no waiting left the ratio is 0/0; that case reports 1.0 (nothing waits).
double cte_if_eliminated(double total_pt, double total_wt, double removed_wt);

// Difference between the CTE without `cause_wt` and the original CTE.
double impact_of_cause(double total_pt, double total_wt, double cause_wt);

// Same formula, removing a whole transition's waiting time.
double impact_of_transition(double total_pt, double total_wt, double transition_wt);

struct CauseImpact {
  Seconds wt = 0;
  double share_of_wt = 0.0;
  double cte_if_eliminated = 0.0;
  double delta = 0.0;
};

struct TransitionImpact {
  std::string source_activity;
  std::string target_activity;
  double case_frequency = 0.0;
  std::size_t total_frequency = 0;
  Seconds total_wt = 0;
  std::array<CauseImpact, kCauseCount> per_cause;  // cause eliminated within this transition only
  double cte_if_eliminated = 0.0;
  double delta = 0.0;
};

struct CteReport {
  Seconds total_pt = 0;  // every activity instance, first-in-case included
  Seconds total_wt = 0;  // transition instances only
  double cte = 0.0;
  std::array<CauseImpact, kCauseCount> per_cause;
  std::vector<TransitionImpact> per_transition;  // same order as the transitions
};

CteReport build_cte_report(const EventLog& log, const std::vector<Transition>& transitions,
                           const DecompositionTable& decompositions);

}  // namespace wtm
