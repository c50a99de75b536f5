#include "wtm/synthlog.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "wtm/report.hpp"

namespace wtm::synth {
namespace {

constexpr std::array<std::string_view, 5> kActivities = {"Receive", "Check", "Assess", "Decide",
                                                          "Notify"};
constexpr std::size_t kCheck = 1;   // batching target
constexpr std::size_t kAssess = 2;  // contention and prioritization target
constexpr std::size_t kDecide = 3;  // unavailability target
constexpr std::size_t kNotify = 4;  // extraneous target

constexpr Seconds kLaneLength = 2 * kSecondsPerWeek;
constexpr Seconds kMaxJitter = 300;

Seconds hm(int hours, int minutes = 0) { return hours * kSecondsPerHour + minutes * kSecondsPerMinute; }

// Timeline of one case: start and resource of each template activity.
struct CasePlan {
  std::string case_id;
  std::array<TimeInstant, 5> start{};
  std::array<std::string, 5> resource{};
};

class LaneBuilder {
 public:
  LaneBuilder(const InjectionSpec& spec, TimeInstant lane_start, std::vector<ActivityInstance>& rows)
      : durations_(spec.durations.seconds), lane_start_(lane_start), rows_(rows) {}

  TimeInstant at(int day, Seconds time_of_day) const {
    return lane_start_ + day * kSecondsPerDay + time_of_day;
  }

  Seconds duration(std::size_t activity) const { return durations_[activity]; }

  // Activities before `activity` run back to back so that it is enabled at `enabled`;
  // it then starts at `start` and the rest follow without waiting.
  CasePlan plan(std::string case_id, std::size_t slot, std::size_t activity, TimeInstant enabled,
                TimeInstant start) const {
    CasePlan p;
    p.case_id = std::move(case_id);
    TimeInstant t = enabled;
    for (std::size_t k = activity; k-- > 0;) {
      t = t - durations_[k];
      p.start[k] = t;
    }
    p.start[activity] = start;
    for (std::size_t k = activity + 1; k < 5; ++k) p.start[k] = p.start[k - 1] + durations_[k - 1];
    for (std::size_t k = 0; k < 5; ++k) p.resource[k] = fmt::format("R_{}_{}", kActivities[k], slot);
    return p;
  }

  void emit(const CasePlan& p, Seconds jitter) {
    for (std::size_t k = 0; k < 5; ++k) {
      ActivityInstance inst;
      inst.case_id = p.case_id;
      inst.activity = std::string(kActivities[k]);
      inst.resource = p.resource[k];
      inst.started = p.start[k] + jitter;
      inst.completed = inst.started + durations_[k];
      rows_.push_back(std::move(inst));
    }
  }

 private:
  std::array<Seconds, 5> durations_;
  TimeInstant lane_start_;
  std::vector<ActivityInstance>& rows_;
};

std::size_t lane_size(Cause c, const InjectionSpec& spec) {
  const bool artifacts_with_contention = spec.reproduce_artifacts && spec.causes[Cause::Contention];
  switch (c) {
    case Cause::Batching: return 3;
    case Cause::Contention: return 2;
    case Cause::Prioritization: return 2;
    case Cause::Unavailability: return artifacts_with_contention ? 2 : 1;
    case Cause::Extraneous: return artifacts_with_contention ? 2 : 1;
  }
  return 1;
}

// Builds one lane's cases. Waiting intervals are kept inside calendar slots in
// which the waiting resource is itself observed, so that no unavailability is
// discovered where none was injected.
void build_lane(const InjectionSpec& spec, std::string_view kind,
                const std::vector<std::string>& ids, LaneBuilder& b, Seconds jitter) {
  const bool artifacts = spec.reproduce_artifacts;
  constexpr int kTue = 1, kWed = 2, kThu = 3, kNextMon = 7;

  if (kind == "clean") {
    const TimeInstant e = b.at(kTue, hm(10) + b.duration(0));
    b.emit(b.plan(ids[0], 0, 1, e, e), jitter);
    return;
  }
  if (kind == cause_name(Cause::Batching)) {
    // Three enablements ten minutes apart, all processed together at the last one.
    const TimeInstant release = b.at(kTue, hm(10, 50));
    for (std::size_t j = 0; j < ids.size(); ++j) {
      const TimeInstant e = b.at(kTue, hm(10, 30) + static_cast<Seconds>(j) * hm(0, 10));
      CasePlan p = b.plan(ids[j], j, kCheck, e, release);
      p.resource[kCheck] = "R_Check_Batcher";
      b.emit(p, jitter);
    }
    return;
  }
  if (kind == cause_name(Cause::Contention)) {
    // Second case arrives while the single assessor works on the first.
    const TimeInstant e0 = b.at(kTue, hm(11));
    const TimeInstant e1 = e0 + b.duration(kAssess) / 3;
    CasePlan p0 = b.plan(ids[0], 0, kAssess, e0, e0);
    CasePlan p1 = b.plan(ids[1], 1, kAssess, e1, e0 + b.duration(kAssess));
    p0.resource[kAssess] = p1.resource[kAssess] = "R_Assess_Busy";
    b.emit(p0, jitter);
    b.emit(p1, jitter);
    return;
  }
  if (kind == cause_name(Cause::Prioritization)) {
    // The later arrival (by one second) is served first; the gap before the
    // earlier case starts keeps the pair from reading as a sequential batch.
    const TimeInstant e0 = b.at(kTue, hm(11));
    const TimeInstant e1 = e0 + 1;
    CasePlan p1 = b.plan(ids[1], 1, kAssess, e1, e1);
    CasePlan p0 = b.plan(ids[0], 0, kAssess, e0, e1 + b.duration(kAssess) + 10);
    p0.resource[kAssess] = p1.resource[kAssess] = "R_Assess_Priority";
    b.emit(p0, jitter);
    b.emit(p1, jitter);
    return;
  }
  if (kind == cause_name(Cause::Unavailability)) {
    // Enabled on Thursday, picked up next Monday by a resource only seen on
    // Mondays. The release cancels the lane jitter so work begins exactly on a
    // slot boundary and no sliver of the wait falls inside working hours.
    const TimeInstant release = b.at(kNextMon, hm(9)) - jitter;
    for (std::size_t j = 0; j < ids.size(); ++j) {
      const TimeInstant e = b.at(kThu, hm(11) + static_cast<Seconds>(j) * hm(0, 30));
      CasePlan p = b.plan(ids[j], j, kDecide, e, release);
      p.resource[kDecide] = "R_Decide_Monday";
      b.emit(p, jitter);
    }
    return;
  }
  if (kind == cause_name(Cause::Extraneous)) {
    // Idle resource, delayed start. The artifact variant delays past unobserved hours.
    const TimeInstant e0 = b.at(kTue, hm(14));
    const TimeInstant s0 = artifacts ? b.at(kWed, hm(11, 30)) : b.at(kTue, hm(14, 20));
    CasePlan p0 = b.plan(ids[0], 0, kNotify, e0, s0);
    p0.resource[kNotify] = "R_Notify_Idle";
    b.emit(p0, jitter);
    if (ids.size() > 1) {
      const TimeInstant e1 = b.at(kTue, hm(15));
      CasePlan p1 = b.plan(ids[1], 1, kNotify, e1, e1);
      p1.resource[kNotify] = "R_Notify_Idle";
      b.emit(p1, jitter);
    }
    return;
  }
  throw std::logic_error(fmt::format("unknown lane kind '{}'", kind));
}

}  // namespace

bool CauseFlags::any() const {
  for (bool b : on) {
    if (b) return true;
  }
  return false;
}

CauseFlags CauseFlags::from_mask(unsigned mask) {
  CauseFlags f;
  for (std::size_t i = 0; i < kCauseCount; ++i) f.on[i] = (mask >> i) & 1U;
  return f;
}

unsigned CauseFlags::mask() const {
  unsigned m = 0;
  for (std::size_t i = 0; i < kCauseCount; ++i) {
    if (on[i]) m |= 1U << i;
  }
  return m;
}

std::string CauseFlags::to_string() const {
  std::string out;
  for (Cause c : kAllCauses) {
    if (!(*this)[c]) continue;
    if (!out.empty()) out += ",";
    out += cause_name(c);
  }
  return out.empty() ? "none" : out;
}

CauseFlags CauseFlags::parse(std::string_view text) {
  CauseFlags f;
  if (text == "none" || text.empty()) return f;
  if (text == "all") return from_mask((1U << kCauseCount) - 1);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    bool matched = false;
    for (Cause c : kAllCauses) {
      if (item == cause_name(c)) {
        f.set(c);
        matched = true;
      }
    }
    if (!matched) throw std::invalid_argument(fmt::format("unknown cause '{}'", item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return f;
}

std::size_t InjectionSpec::min_cases() const {
  std::size_t n = 0;
  for (Cause c : kAllCauses) {
    if (causes[c]) n += lane_size(c, *this);
  }
  return std::max<std::size_t>(n, 1);
}

void InjectionSpec::validate() const {
  if (n_cases < 1) throw std::invalid_argument("n_cases must be at least 1");
  if (n_cases < min_cases()) {
    throw std::invalid_argument(fmt::format(
        "{} cases cannot hold one lane per injected cause ({} needed)", n_cases, min_cases()));
  }
  for (Seconds d : durations.seconds) {
    if (d < 10 * kSecondsPerMinute || d > 60 * kSecondsPerMinute) {
      throw std::invalid_argument("template durations must lie in [10, 60] minutes");
    }
  }
}

nlohmann::ordered_json GroundTruth::to_json() const {
  nlohmann::ordered_json flags = nlohmann::ordered_json::object();
  for (Cause c : kAllCauses) flags[std::string(cause_name(c))] = injected[c];
  nlohmann::ordered_json lanes_json = nlohmann::ordered_json::array();
  for (const Lane& l : lanes) {
    lanes_json.push_back({{"kind", l.kind}, {"start", format_iso8601(l.start)}, {"cases", l.case_ids}});
  }
  return {{"causes", flags},
          {"mask", injected.mask()},
          {"n_cases", n_cases},
          {"seed", seed},
          {"reproduce_artifacts", reproduce_artifacts},
          {"lanes", lanes_json}};
}

std::string SyntheticLog::to_csv() const {
  std::ostringstream out;
  out << "case_id,activity,resource,start_time,end_time\n";
  for (const ActivityInstance& r : rows) {
    out << csv_escape(r.case_id) << ',' << csv_escape(r.activity) << ',' << csv_escape(r.resource)
        << ',' << format_iso8601(r.started) << ',' << format_iso8601(r.completed) << '\n';
  }
  return out.str();
}

SyntheticLog generate(const InjectionSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  SyntheticLog out;
  out.truth.injected = spec.causes;
  out.truth.n_cases = spec.n_cases;
  out.truth.seed = spec.seed;
  out.truth.reproduce_artifacts = spec.reproduce_artifacts;

  // Lane kinds: cycle over injected causes while whole lanes fit, then fill
  // with single-case clean lanes.
  std::vector<std::string> kinds;
  std::size_t remaining = spec.n_cases;
  std::vector<Cause> injected;
  for (Cause c : kAllCauses) {
    if (spec.causes[c]) injected.push_back(c);
  }
  for (bool progress = !injected.empty(); progress;) {
    progress = false;
    for (Cause c : injected) {
      const std::size_t size = lane_size(c, spec);
      if (size > remaining) continue;
      kinds.emplace_back(cause_name(c));
      remaining -= size;
      progress = true;
    }
  }
  for (; remaining > 0; --remaining) kinds.emplace_back("clean");

  const TimeInstant origin = make_instant(2023, 1, 2);  // a Monday
  std::size_t next_case = 0;
  for (std::size_t lane = 0; lane < kinds.size(); ++lane) {
    Lane l;
    l.kind = kinds[lane];
    l.start = origin + static_cast<Seconds>(lane) * kLaneLength;
    std::size_t size = 1;
    for (Cause c : kAllCauses) {
      if (l.kind == cause_name(c)) size = lane_size(c, spec);
    }
    for (std::size_t j = 0; j < size; ++j) l.case_ids.push_back(fmt::format("case_{:04}", ++next_case));
    const auto jitter = static_cast<Seconds>(rng() % (kMaxJitter + 1));
    LaneBuilder builder(spec, l.start, out.rows);
    build_lane(spec, l.kind, l.case_ids, builder, jitter);
    out.truth.lanes.push_back(std::move(l));
  }

  for (std::size_t i = out.rows.size(); i > 1; --i) {
    std::swap(out.rows[i - 1], out.rows[static_cast<std::size_t>(rng() % i)]);
  }
  return out;
}

CauseFlags detected_causes(const DecompositionTable& decompositions, Seconds min_instance_seconds) {
  CauseFlags f;
  for (const auto& per_transition : decompositions) {
    for (const WtDecomposition& d : per_transition) {
      for (Cause c : kAllCauses) {
        if (d.duration(c) >= min_instance_seconds) f.set(c);
      }
    }
  }
  return f;
}

void DetectionScore::add(const CauseFlags& injected, const CauseFlags& detected) {
  for (Cause c : kAllCauses) {
    if (injected[c] && detected[c]) ++true_positives;
    else if (!injected[c] && detected[c]) ++false_positives;
    else if (injected[c] && !detected[c]) ++false_negatives;
    else ++true_negatives;
  }
}

double DetectionScore::precision() const {
  const std::size_t d = true_positives + false_positives;
  return d == 0 ? 1.0 : static_cast<double>(true_positives) / static_cast<double>(d);
}

double DetectionScore::recall() const {
  const std::size_t d = true_positives + false_negatives;
  return d == 0 ? 1.0 : static_cast<double>(true_positives) / static_cast<double>(d);
}

bool is_documented_false_positive(Cause detected, const CauseFlags& injected) {
  switch (detected) {
    case Cause::Unavailability:
    case Cause::Prioritization:
      return injected[Cause::Extraneous];
    case Cause::Batching:
      return injected[Cause::Contention] && injected[Cause::Unavailability];
    default:
      return false;
  }
}

}  // namespace wtm::synth
