#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wtm/event_log.hpp"

namespace wtm {

struct OracleThresholds {
  double dependency_threshold = 0.9;
  std::size_t min_bidirectional_observations = 1;
  bool length2_loop_guard = true;

  void validate() const;
};

using ActivityPair = std::pair<std::string, std::string>;

struct DirectlyFollowsCounts {
  std::map<ActivityPair, std::size_t> follows;       // |a>b|
  std::map<ActivityPair, std::size_t> length2_loops;  // |a>b>a|, keyed (a, b)

  std::size_t count(const std::string& a, const std::string& b) const;
  std::size_t loop_count(const std::string& a, const std::string& b) const;
};

// Symmetric, irreflexive set of concurrent activity pairs.
class ConcurrencyRelation {
 public:
  void insert(const std::string& a, const std::string& b);
  bool concurrent(const std::string& a, const std::string& b) const;
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  // Each pair once, lexicographically ordered within the pair.
  const std::set<ActivityPair>& pairs() const { return pairs_; }

 private:
  std::set<ActivityPair> pairs_;
};

DirectlyFollowsCounts count_directly_follows(const EventLog& log);

ConcurrencyRelation detect_concurrency(const DirectlyFollowsCounts& counts,
                                       const OracleThresholds& thresholds);

struct EnablementResult {
  EventLog log;  // every instance has `enabled` set
  // Enabling predecessor per instance; nullopt for case starts and for
  // instances whose predecessors are all concurrent with them.
  std::vector<std::optional<InstanceId>> predecessor;
  std::size_t clamped = 0;   // predecessor completed after the instance started
  std::size_t supplied = 0;  // enablement taken from the input log
};

// Enablement is the completion of the latest-completing preceding instance in
// the case whose activity is not concurrent with the instance's activity,
// clamped to the instance start. Enablements supplied by the input are kept.
EnablementResult compute_enablement(const EventLog& log, const ConcurrencyRelation& relation);

}  // namespace wtm
