#include "wtm/batching.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "wtm/error.hpp"

namespace wtm {

void BatchingParams::validate() const {
  if (gap_tolerance < 0) throw ConfigError("gap tolerance must be non-negative");
  if (min_batch_size < 2) throw ConfigError("minimum batch size must be at least 2");
}

BatchIndex detect_batches(const EventLog& log, const BatchingParams& params) {
  params.validate();
  BatchIndex index;
  index.batch_of.assign(log.size(), std::nullopt);

  std::map<std::string_view, std::vector<InstanceId>> by_resource;
  for (InstanceId i = 0; i < log.size(); ++i) {
    if (log[i].has_known_resource()) by_resource[log[i].resource].push_back(i);
  }

  for (auto& [resource, ids] : by_resource) {
    std::sort(ids.begin(), ids.end(), [&](InstanceId a, InstanceId b) {
      return std::tie(log[a].started, log[a].completed, a) <
             std::tie(log[b].started, log[b].completed, b);
    });

    std::vector<InstanceId> run;
    TimeInstant run_completion;
    auto close_run = [&] {
      if (run.size() >= params.min_batch_size) {
        Batch b;
        b.activity = log[run.front()].activity;
        b.resource = std::string(resource);
        b.members = run;
        b.accumulation_end = *log[run.front()].enabled;
        for (InstanceId m : run) b.accumulation_end = std::max(b.accumulation_end, *log[m].enabled);
        for (InstanceId m : run) index.batch_of[m] = index.batches.size();
        index.batches.push_back(std::move(b));
      }
      run.clear();
    };

    for (InstanceId id : ids) {
      const ActivityInstance& inst = log[id];
      bool extends = !run.empty() && inst.activity == log[run.front()].activity &&
                     inst.started <= run_completion + params.gap_tolerance &&
                     *inst.enabled <= log[run.front()].started;
      if (!extends) {
        close_run();
        run_completion = inst.completed;
      }
      run.push_back(id);
      run_completion = std::max(run_completion, inst.completed);
    }
    close_run();
  }
  return index;
}

IntervalSet batching_interval(const ActivityInstance& inst, const Batch& batch) {
  const TimeInterval waiting = inst.waiting();
  const TimeInstant end = std::min(batch.accumulation_end, waiting.end);
  if (end <= waiting.start) return {};
  return IntervalSet{TimeInterval{waiting.start, end}};
}

}  // namespace wtm
