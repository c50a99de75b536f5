#include "wtm/decomposition.hpp"

#include <algorithm>

#include "wtm/parallel.hpp"

namespace wtm {
namespace {

enum class EnablementOrder { NotAfter, After };

IntervalSet raw_resource_overlap(InstanceId id, const DecompositionContext& ctx,
                                 EnablementOrder order) {
  const ActivityInstance& inst = ctx.log[id];
  const TimeInterval waiting = inst.waiting();
  if (waiting.empty() || !inst.has_known_resource()) return {};
  const TimeInstant enabled = *inst.enabled;

  std::vector<TimeInterval> pieces;
  for (InstanceId j : ctx.resources.candidates(inst.resource, waiting)) {
    if (j == id) continue;
    const ActivityInstance& other = ctx.log[j];
    const bool after = *other.enabled > enabled;
    if (after != (order == EnablementOrder::After)) continue;
    const TimeInstant s = std::max(other.started, waiting.start);
    const TimeInstant e = std::min(other.completed, waiting.end);
    if (s < e) pieces.push_back({s, e});
  }
  return IntervalSet::from_unsorted(std::move(pieces));
}

}  // namespace

std::string_view cause_name(Cause c) {
  switch (c) {
    case Cause::Batching: return "batching";
    case Cause::Contention: return "contention";
    case Cause::Prioritization: return "prioritization";
    case Cause::Unavailability: return "unavailability";
    case Cause::Extraneous: return "extraneous";
  }
  return "extraneous";
}

ResourceIndex::ResourceIndex(const EventLog& log) {
  for (InstanceId i = 0; i < log.size(); ++i) {
    const ActivityInstance& inst = log[i];
    if (!inst.has_known_resource()) continue;
    Entry& e = entries_[inst.resource];
    e.by_start.push_back(i);
    e.max_processing = std::max(e.max_processing, inst.processing().duration());
  }
  for (auto& [resource, e] : entries_) {
    std::sort(e.by_start.begin(), e.by_start.end(), [&](InstanceId a, InstanceId b) {
      return log[a].started != log[b].started ? log[a].started < log[b].started : a < b;
    });
    e.starts.reserve(e.by_start.size());
    for (InstanceId i : e.by_start) e.starts.push_back(log[i].started);
  }
}

std::span<const InstanceId> ResourceIndex::candidates(std::string_view resource,
                                                      TimeInterval window) const {
  auto it = entries_.find(resource);
  if (it == entries_.end() || window.empty()) return {};
  const Entry& e = it->second;
  // Overlap needs start < window.end and start + duration > window.start.
  const TimeInstant earliest = window.start - e.max_processing;
  auto lo = std::upper_bound(e.starts.begin(), e.starts.end(), earliest);
  auto hi = std::lower_bound(e.starts.begin(), e.starts.end(), window.end);
  if (hi <= lo) return {};
  const auto first = static_cast<std::size_t>(lo - e.starts.begin());
  const auto last = static_cast<std::size_t>(hi - e.starts.begin());
  return std::span<const InstanceId>(e.by_start).subspan(first, last - first);
}

IntervalSet raw_contention(InstanceId id, const DecompositionContext& ctx) {
  return raw_resource_overlap(id, ctx, EnablementOrder::NotAfter);
}

IntervalSet raw_prioritization(InstanceId id, const DecompositionContext& ctx) {
  return raw_resource_overlap(id, ctx, EnablementOrder::After);
}

IntervalSet raw_unavailability(const ActivityInstance& inst, const IntervalSet* availability) {
  const TimeInterval waiting = inst.waiting();
  if (waiting.empty() || !inst.has_known_resource() || availability == nullptr) return {};
  return interval_subtract(IntervalSet{waiting}, availability->clip(waiting));
}

WtDecomposition decompose(const TransitionInstance& ti, const DecompositionContext& ctx) {
  const ActivityInstance& inst = ctx.log[ti.target];
  WtDecomposition d;
  d.source = ti.source;
  d.target = ti.target;
  d.waiting = inst.waiting();
  if (d.waiting.empty()) return d;

  IntervalSet remaining{d.waiting};
  auto claim = [&](Cause cause, const IntervalSet& raw) {
    IntervalSet claimed = interval_intersect(raw, remaining);
    remaining = interval_subtract(remaining, claimed);
    d[cause] = std::move(claimed);
  };

  if (const Batch* batch = ctx.batches.find(ti.target)) {
    claim(Cause::Batching, batching_interval(inst, *batch));
  }
  claim(Cause::Contention, raw_contention(ti.target, ctx));
  claim(Cause::Prioritization, raw_prioritization(ti.target, ctx));
  auto avail = ctx.availability.find(inst.resource);
  claim(Cause::Unavailability,
        raw_unavailability(inst, avail == ctx.availability.end() ? nullptr : &avail->second));
  d[Cause::Extraneous] = std::move(remaining);
  return d;
}

DecompositionTable decompose_all_serial(std::span<const Transition> transitions,
                                        const DecompositionContext& ctx) {
  DecompositionTable out(transitions.size());
  for (std::size_t t = 0; t < transitions.size(); ++t) {
    out[t].reserve(transitions[t].instances.size());
    for (const TransitionInstance& ti : transitions[t].instances) {
      out[t].push_back(decompose(ti, ctx));
    }
  }
  return out;
}

DecompositionTable decompose_all(std::span<const Transition> transitions,
                                 const DecompositionContext& ctx) {
  DecompositionTable out(transitions.size());
  std::vector<std::pair<std::size_t, std::size_t>> work;
  for (std::size_t t = 0; t < transitions.size(); ++t) {
    out[t].resize(transitions[t].instances.size());
    for (std::size_t k = 0; k < transitions[t].instances.size(); ++k) work.emplace_back(t, k);
  }
  const auto n = static_cast<std::ptrdiff_t>(work.size());
#pragma omp parallel for schedule(dynamic, 32) num_threads(worker_count())
  for (std::ptrdiff_t w = 0; w < n; ++w) {
    const auto [t, k] = work[static_cast<std::size_t>(w)];
    out[t][k] = decompose(transitions[t].instances[k], ctx);
  }
  return out;
}

double multitasking_rate(const EventLog& log, const ResourceIndex& resources) {
  std::size_t known = 0;
  std::size_t overlapping = 0;
  for (InstanceId i = 0; i < log.size(); ++i) {
    const ActivityInstance& inst = log[i];
    if (!inst.has_known_resource()) continue;
    ++known;
    const TimeInterval pt = inst.processing();
    for (InstanceId j : resources.candidates(inst.resource, pt)) {
      if (j == i) continue;
      if (log[j].started < pt.end && pt.start < log[j].completed) {
        ++overlapping;
        break;
      }
    }
  }
  return known == 0 ? 0.0 : static_cast<double>(overlapping) / static_cast<double>(known);
}

}  // namespace wtm
