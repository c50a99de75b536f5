#include "wtm/transitions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace wtm {

std::vector<Transition> discover_transitions(const EnablementResult& enablement) {
  const EventLog& log = enablement.log;
  std::map<ActivityPair, Transition> grouped;
  for (InstanceId i = 0; i < log.size(); ++i) {
    const auto& pred = enablement.predecessor[i];
    if (!pred) continue;
    const ActivityInstance& target = log[i];
    Transition& t = grouped[{log[*pred].activity, target.activity}];
    t.instances.push_back({*pred, i, target.waiting()});
  }

  std::vector<Transition> out;
  out.reserve(grouped.size());
  const double cases = static_cast<double>(std::max<std::size_t>(log.case_count(), 1));
  for (auto& [labels, t] : grouped) {
    t.source_activity = labels.first;
    t.target_activity = labels.second;
    t.total_frequency = t.instances.size();
    std::set<std::string_view> distinct_cases;
    for (const TransitionInstance& ti : t.instances) {
      t.total_duration += ti.waiting.duration();
      distinct_cases.insert(log[ti.target].case_id);
    }
    t.case_frequency = static_cast<double>(distinct_cases.size()) / cases;
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), [](const Transition& a, const Transition& b) {
    if (a.total_duration != b.total_duration) return a.total_duration > b.total_duration;
    if (a.total_frequency != b.total_frequency) return a.total_frequency > b.total_frequency;
    return std::tie(a.source_activity, a.target_activity) <
           std::tie(b.source_activity, b.target_activity);
  });
  return out;
}

std::size_t transition_instance_count(const std::vector<Transition>& transitions) {
  std::size_t n = 0;
  for (const Transition& t : transitions) n += t.instances.size();
  return n;
}

}  // namespace wtm
