#include "wtm/event_log.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

namespace wtm {

std::string_view to_string(EnablementSource s) {
  switch (s) {
    case EnablementSource::Unset: return "unset";
    case EnablementSource::Input: return "input";
    case EnablementSource::Predecessor: return "predecessor";
    case EnablementSource::CaseStart: return "case_start";
  }
  return "unset";
}

EventLog::EventLog(std::vector<ActivityInstance> instances) : instances_(std::move(instances)) {
  for (const ActivityInstance& inst : instances_) {
    if (inst.completed < inst.started) {
      throw std::invalid_argument(
          fmt::format("instance of '{}' in case '{}' completes before it starts", inst.activity,
                      inst.case_id));
    }
    if (inst.enabled && inst.started < *inst.enabled) {
      throw std::invalid_argument(
          fmt::format("instance of '{}' in case '{}' starts before it is enabled", inst.activity,
                      inst.case_id));
    }
  }
  std::stable_sort(instances_.begin(), instances_.end(),
                   [](const ActivityInstance& x, const ActivityInstance& y) {
                     return std::tie(x.case_id, x.started, x.completed, x.activity, x.resource,
                                     x.enabled) < std::tie(y.case_id, y.started, y.completed,
                                                           y.activity, y.resource, y.enabled);
                   });
  for (InstanceId i = 0; i < instances_.size(); ++i) {
    if (cases_.empty() || cases_.back().id != instances_[i].case_id) {
      cases_.push_back({instances_[i].case_id, i, i});
    }
    cases_.back().end = i + 1;
  }
}

std::vector<std::string> EventLog::resources() const {
  std::vector<std::string> out;
  out.reserve(instances_.size());
  for (const ActivityInstance& inst : instances_) out.push_back(inst.resource);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TimeInterval EventLog::horizon() const {
  if (instances_.empty()) return {};
  TimeInstant lo = instances_.front().started;
  TimeInstant hi = instances_.front().completed;
  for (const ActivityInstance& inst : instances_) {
    lo = std::min(lo, inst.enabled.value_or(inst.started));
    lo = std::min(lo, inst.started);
    hi = std::max(hi, inst.completed);
  }
  return {lo, hi};
}

EventLog EventLog::with_enablement(std::span<const std::optional<TimeInstant>> enabled,
                                   std::span<const EnablementSource> sources) const {
  if (enabled.size() != instances_.size() || sources.size() != instances_.size()) {
    throw std::invalid_argument("enablement vectors must match the log size");
  }
  EventLog out;
  out.instances_ = instances_;
  out.cases_ = cases_;
  for (InstanceId i = 0; i < instances_.size(); ++i) {
    if (enabled[i] && out.instances_[i].started < *enabled[i]) {
      throw std::invalid_argument("enablement after start");
    }
    out.instances_[i].enabled = enabled[i];
    out.instances_[i].enablement_source = sources[i];
  }
  return out;
}

}  // namespace wtm
