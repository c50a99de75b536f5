#include "wtm/concurrency.hpp"

#include <cmath>

#include "wtm/error.hpp"
#include "wtm/parallel.hpp"

namespace wtm {

void OracleThresholds::validate() const {
  if (!(dependency_threshold >= 0.0 && dependency_threshold <= 1.0)) {
    throw ConfigError("dependency threshold must lie in [0, 1]");
  }
}

std::size_t DirectlyFollowsCounts::count(const std::string& a, const std::string& b) const {
  auto it = follows.find({a, b});
  return it == follows.end() ? 0 : it->second;
}

std::size_t DirectlyFollowsCounts::loop_count(const std::string& a, const std::string& b) const {
  auto it = length2_loops.find({a, b});
  return it == length2_loops.end() ? 0 : it->second;
}

void ConcurrencyRelation::insert(const std::string& a, const std::string& b) {
  if (a == b) return;
  pairs_.insert(a < b ? ActivityPair{a, b} : ActivityPair{b, a});
}

bool ConcurrencyRelation::concurrent(const std::string& a, const std::string& b) const {
  if (a == b) return false;
  return pairs_.contains(a < b ? ActivityPair{a, b} : ActivityPair{b, a});
}

DirectlyFollowsCounts count_directly_follows(const EventLog& log) {
  DirectlyFollowsCounts counts;
  for (const CaseSpan& c : log.cases()) {
    for (InstanceId i = c.begin; i + 1 < c.end; ++i) {
      ++counts.follows[{log[i].activity, log[i + 1].activity}];
      if (i + 2 < c.end && log[i].activity == log[i + 2].activity &&
          log[i].activity != log[i + 1].activity) {
        ++counts.length2_loops[{log[i].activity, log[i + 1].activity}];
      }
    }
  }
  return counts;
}

ConcurrencyRelation detect_concurrency(const DirectlyFollowsCounts& counts,
                                       const OracleThresholds& thresholds) {
  thresholds.validate();
  ConcurrencyRelation rel;
  for (const auto& [pair, ab] : counts.follows) {
    const auto& [a, b] = pair;
    if (!(a < b)) continue;  // visit each unordered pair once, skip self-loops
    const std::size_t ba = counts.count(b, a);
    if (ab < thresholds.min_bidirectional_observations ||
        ba < thresholds.min_bidirectional_observations) {
      continue;
    }
    const double dependency = std::abs(static_cast<double>(ab) - static_cast<double>(ba)) /
                              (static_cast<double>(ab + ba) + 1.0);
    if (dependency >= thresholds.dependency_threshold) continue;
    if (thresholds.length2_loop_guard && counts.loop_count(a, b) + counts.loop_count(b, a) > 0) {
      continue;
    }
    rel.insert(a, b);
  }
  return rel;
}

EnablementResult compute_enablement(const EventLog& log, const ConcurrencyRelation& relation) {
  const std::size_t n = log.size();
  std::vector<std::optional<TimeInstant>> enabled(n);
  std::vector<EnablementSource> sources(n, EnablementSource::Unset);
  std::vector<std::optional<InstanceId>> predecessor(n);
  std::vector<unsigned char> clamped(n, 0);

  const auto cases = log.cases();
  const auto case_count = static_cast<std::ptrdiff_t>(cases.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(worker_count())
  for (std::ptrdiff_t ci = 0; ci < case_count; ++ci) {
    const CaseSpan& c = cases[static_cast<std::size_t>(ci)];
    for (InstanceId i = c.begin; i < c.end; ++i) {
      const ActivityInstance& inst = log[i];
      std::optional<InstanceId> best;
      for (InstanceId j = c.begin; j < i; ++j) {
        if (relation.concurrent(log[j].activity, inst.activity)) continue;
        // Latest completion wins; on equal completion the closer one (larger j).
        if (!best || log[*best].completed <= log[j].completed) best = j;
      }
      predecessor[i] = best;
      if (inst.enabled) {
        enabled[i] = inst.enabled;
        sources[i] = EnablementSource::Input;
      } else if (best) {
        TimeInstant e = log[*best].completed;
        if (inst.started < e) {
          e = inst.started;
          clamped[i] = 1;
        }
        enabled[i] = e;
        sources[i] = EnablementSource::Predecessor;
      } else {
        enabled[i] = inst.started;
        sources[i] = EnablementSource::CaseStart;
      }
    }
  }

  EnablementResult result{log.with_enablement(enabled, sources), std::move(predecessor), 0, 0};
  for (InstanceId i = 0; i < n; ++i) {
    result.clamped += clamped[i];
    if (sources[i] == EnablementSource::Input) ++result.supplied;
  }
  return result;
}

}  // namespace wtm
