#include "test_support.hpp"

#include <algorithm>
#include <map>

namespace wtm::testing {

ActivityInstance inst(std::string case_id, std::string activity, std::string resource, Seconds start,
                      Seconds end, std::optional<Seconds> enabled, TimeInstant origin) {
  ActivityInstance a;
  a.case_id = std::move(case_id);
  a.activity = std::move(activity);
  a.resource = resource.empty() ? std::string(kUnknownResource) : std::move(resource);
  a.started = origin + start;
  a.completed = origin + end;
  if (enabled) a.enabled = origin + *enabled;
  return a;
}

IntervalSet set_of(std::initializer_list<std::pair<Seconds, Seconds>> spans, TimeInstant origin) {
  std::vector<TimeInterval> v;
  for (auto [s, e] : spans) v.push_back({origin + s, origin + e});
  return IntervalSet::from_unsorted(std::move(v));
}

std::vector<SecondLabels> brute_force_labels(const AnalysisResult& result) {
  const EventLog& log = result.log();

  // Accumulation end per instance, from batch membership alone.
  std::map<InstanceId, TimeInstant> accumulation_end;
  for (const Batch& b : result.batches.batches) {
    TimeInstant last = *log[b.members.front()].enabled;
    for (InstanceId m : b.members) last = std::max(last, *log[m].enabled);
    for (InstanceId m : b.members) accumulation_end[m] = last;
  }

  std::vector<SecondLabels> out;
  for (const Transition& t : result.transitions) {
    for (const TransitionInstance& ti : t.instances) {
      const ActivityInstance& a = log[ti.target];
      SecondLabels sl;
      sl.target = ti.target;
      sl.waiting = TimeInterval{*a.enabled, a.started};
      const bool known = a.resource != kUnknownResource;
      auto cal = result.calendars.find(a.resource);
      auto acc = accumulation_end.find(ti.target);
      for (TimeInstant s = sl.waiting.start; s < sl.waiting.end; s = s + 1) {
        Cause label = Cause::Extraneous;
        bool contention = false;
        bool prioritization = false;
        if (known) {
          for (InstanceId j = 0; j < log.size(); ++j) {
            if (j == ti.target || log[j].resource != a.resource) continue;
            if (!(log[j].started <= s && s < log[j].completed)) continue;
            if (*log[j].enabled <= *a.enabled) contention = true;
            else prioritization = true;
          }
        }
        if (acc != accumulation_end.end() && s < acc->second) label = Cause::Batching;
        else if (contention) label = Cause::Contention;
        else if (prioritization) label = Cause::Prioritization;
        else if (known && cal != result.calendars.end() && !cal->second.is_working_at(s))
          label = Cause::Unavailability;
        sl.labels.push_back(label);
      }
      out.push_back(std::move(sl));
    }
  }
  return out;
}

std::array<Seconds, kCauseCount> durations_of(const SecondLabels& labels) {
  std::array<Seconds, kCauseCount> d{};
  for (Cause c : labels.labels) ++d[static_cast<std::size_t>(c)];
  return d;
}

std::array<IntervalSet, kCauseCount> sets_of(const SecondLabels& labels) {
  std::array<std::vector<TimeInterval>, kCauseCount> pieces;
  for (std::size_t k = 0; k < labels.labels.size(); ++k) {
    const TimeInstant s = labels.waiting.start + static_cast<Seconds>(k);
    pieces[static_cast<std::size_t>(labels.labels[k])].push_back({s, s + 1});
  }
  std::array<IntervalSet, kCauseCount> out;
  for (std::size_t c = 0; c < kCauseCount; ++c) out[c] = IntervalSet::from_unsorted(std::move(pieces[c]));
  return out;
}

}  // namespace wtm::testing
