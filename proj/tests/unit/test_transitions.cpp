#include <doctest.h>

#include <random>
#include <set>

#include "test_support.hpp"
#include "wtm/transitions.hpp"

using namespace wtm;
using wtm::testing::inst;

namespace {

std::vector<Transition> transitions_of(const std::vector<ActivityInstance>& rows) {
  const EventLog log(rows);
  return discover_transitions(compute_enablement(log, detect_concurrency(count_directly_follows(log), {})));
}

}  // namespace

TEST_CASE("three cases with one hour of waiting each") {
  std::vector<ActivityInstance> rows;
  for (int c = 0; c < 3; ++c) {
    rows.push_back(inst("C" + std::to_string(c), "a", "R", 0, 600));
    rows.push_back(inst("C" + std::to_string(c), "b", "R", 600 + 3600, 600 + 3600 + 60));
  }
  const auto t = transitions_of(rows);
  REQUIRE(t.size() == 1);
  CHECK(t[0].source_activity == "a");
  CHECK(t[0].target_activity == "b");
  CHECK(t[0].total_frequency == 3);
  CHECK(t[0].case_frequency == 1.0);
  CHECK(t[0].total_duration == 10800);
}

TEST_CASE("self-loops are transitions") {
  const auto t = transitions_of({inst("C1", "a", "R", 0, 10), inst("C1", "a", "R", 20, 30)});
  REQUIRE(t.size() == 1);
  CHECK(t[0].source_activity == "a");
  CHECK(t[0].target_activity == "a");
  CHECK(t[0].total_duration == 10);
}

TEST_CASE("single-instance cases have no transitions") {
  CHECK(transitions_of({inst("C1", "a", "R", 0, 10), inst("C2", "b", "R", 0, 10)}).empty());
}

TEST_CASE("zero waiting still counts toward frequency") {
  const auto t = transitions_of({inst("C1", "a", "R", 0, 10), inst("C1", "b", "R", 10, 20),
                                 inst("C2", "a", "R", 0, 10), inst("C2", "c", "R", 40, 50)});
  REQUIRE(t.size() == 2);
  CHECK(t[0].target_activity == "c");
  CHECK(t[1].target_activity == "b");
  CHECK(t[1].total_frequency == 1);
  CHECK(t[1].total_duration == 0);
  CHECK(t[1].case_frequency == 0.5);
}

TEST_CASE("sort order: duration, then frequency, then labels") {
  const auto t = transitions_of({inst("C1", "x", "R", 0, 10), inst("C1", "b", "R", 20, 30),
                                 inst("C2", "x", "R", 0, 10), inst("C2", "a", "R", 20, 30),
                                 inst("C3", "y", "R", 0, 10), inst("C3", "z", "R", 15, 20),
                                 inst("C4", "y", "R", 0, 10), inst("C4", "z", "R", 15, 20)});
  REQUIRE(t.size() == 3);
  CHECK(t[0].target_activity == "z");  // 10 s over two instances
  CHECK(t[1].target_activity == "a");  // 10 s, one instance, label a < b
  CHECK(t[2].target_activity == "b");
}

TEST_CASE("invariants on random logs") {
  std::mt19937_64 rng(3);
  const char* acts[] = {"a", "b", "c"};
  for (int round = 0; round < 300; ++round) {
    std::vector<ActivityInstance> rows;
    const int cases = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < 15; ++i) {
      const auto s = static_cast<Seconds>(rng() % 500);
      rows.push_back(inst("c" + std::to_string(rng() % cases), acts[rng() % 3], "R", s,
                          s + static_cast<Seconds>(rng() % 100)));
    }
    const EventLog log(rows);
    const auto e = compute_enablement(log, detect_concurrency(count_directly_follows(log), {}));
    const auto ts = discover_transitions(e);

    Seconds expected = 0;
    for (InstanceId i = 0; i < log.size(); ++i) {
      if (e.predecessor[i]) expected += e.log[i].waiting().duration();
    }
    Seconds total = 0;
    std::set<InstanceId> targets;
    for (const Transition& t : ts) {
      total += t.total_duration;
      REQUIRE(t.case_frequency >= 0.0);
      REQUIRE(t.case_frequency <= 1.0);
      for (const TransitionInstance& ti : t.instances) REQUIRE(targets.insert(ti.target).second);
    }
    REQUIRE(total == expected);
    for (std::size_t k = 1; k < ts.size(); ++k) REQUIRE(ts[k - 1].total_duration >= ts[k].total_duration);
  }
}
