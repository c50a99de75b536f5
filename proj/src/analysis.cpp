#include "wtm/analysis.hpp"

#include <stdexcept>

namespace wtm {

double compute_cte(double total_pt, double total_wt) {
  if (total_pt < 0.0 || total_wt < 0.0) {
    throw std::domain_error("processing and waiting time must be non-negative");
  }
  if (total_pt + total_wt <= 0.0) {
    throw std::domain_error("CTE is undefined when processing plus waiting time is zero");
  }
  return total_pt / (total_pt + total_wt);
}

double cte_if_eliminated(double total_pt, double total_wt, double removed_wt) {
  const double left = total_wt - removed_wt;
  if (total_pt + left <= 0.0) return 1.0;
  return compute_cte(total_pt, left);
}

double impact_of_cause(double total_pt, double total_wt, double cause_wt) {
  return cte_if_eliminated(total_pt, total_wt, cause_wt) - compute_cte(total_pt, total_wt);
}

double impact_of_transition(double total_pt, double total_wt, double transition_wt) {
  return impact_of_cause(total_pt, total_wt, transition_wt);
}

CteReport build_cte_report(const EventLog& log, const std::vector<Transition>& transitions,
                           const DecompositionTable& decompositions) {
  if (decompositions.size() != transitions.size()) {
    throw std::invalid_argument("decomposition table does not match the transitions");
  }
  CteReport report;
  for (const ActivityInstance& inst : log.instances()) {
    report.total_pt += inst.processing().duration();
  }

  report.per_transition.reserve(transitions.size());
  for (std::size_t t = 0; t < transitions.size(); ++t) {
    TransitionImpact ti;
    ti.source_activity = transitions[t].source_activity;
    ti.target_activity = transitions[t].target_activity;
    ti.case_frequency = transitions[t].case_frequency;
    ti.total_frequency = transitions[t].total_frequency;
    for (const WtDecomposition& d : decompositions[t]) {
      ti.total_wt += d.waiting.duration();
      for (Cause c : kAllCauses) ti.per_cause[static_cast<std::size_t>(c)].wt += d.duration(c);
    }
    report.total_wt += ti.total_wt;
    for (Cause c : kAllCauses) {
      report.per_cause[static_cast<std::size_t>(c)].wt += ti.per_cause[static_cast<std::size_t>(c)].wt;
    }
    report.per_transition.push_back(std::move(ti));
  }

  const auto pt = static_cast<double>(report.total_pt);
  const auto wt = static_cast<double>(report.total_wt);
  report.cte = compute_cte(pt, wt);
  auto fill = [&](CauseImpact& ci, Seconds total_scope) {
    ci.share_of_wt = total_scope > 0 ? static_cast<double>(ci.wt) / static_cast<double>(total_scope) : 0.0;
    ci.cte_if_eliminated = cte_if_eliminated(pt, wt, static_cast<double>(ci.wt));
    ci.delta = ci.cte_if_eliminated - report.cte;
  };
  for (CauseImpact& ci : report.per_cause) fill(ci, report.total_wt);
  for (TransitionImpact& ti : report.per_transition) {
    ti.cte_if_eliminated = cte_if_eliminated(pt, wt, static_cast<double>(ti.total_wt));
    ti.delta = ti.cte_if_eliminated - report.cte;
    for (CauseImpact& ci : ti.per_cause) fill(ci, ti.total_wt);
  }
  return report;
}

}  // namespace wtm
