#include "wtm/pipeline.hpp"

namespace wtm {

void AnalysisConfig::validate() const {
  oracle.validate();
  calendar.validate();
  batching.validate();
}

AnalysisResult analyze(const EventLog& log, const AnalysisConfig& config) {
  config.validate();
  AnalysisResult r;
  r.counts = count_directly_follows(log);
  r.relation = detect_concurrency(r.counts, config.oracle);
  r.enablement = compute_enablement(log, r.relation);
  const EventLog& enabled = r.enablement.log;

  r.transitions = discover_transitions(r.enablement);
  r.batches = detect_batches(enabled, config.batching);
  r.calendars = discover_calendars(enabled, config.calendar, config.calendar_overrides,
                                   &r.diagnostics.calendars);
  r.availability = expand_calendars(r.calendars, enabled.horizon());

  const ResourceIndex resources(enabled);
  const DecompositionContext ctx{enabled, r.batches, resources, r.availability};
  r.decompositions = config.parallel ? decompose_all(r.transitions, ctx)
                                     : decompose_all_serial(r.transitions, ctx);
  r.report = build_cte_report(enabled, r.transitions, r.decompositions);

  r.diagnostics.clamped_enablements = r.enablement.clamped;
  r.diagnostics.supplied_enablements = r.enablement.supplied;
  r.diagnostics.multitasking_rate = multitasking_rate(enabled, resources);
  return r;
}

}  // namespace wtm
