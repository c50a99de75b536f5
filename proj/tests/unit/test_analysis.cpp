#include <doctest.h>

#include <random>
#include <stdexcept>

#include "test_support.hpp"
#include "wtm/analysis.hpp"
#include "wtm/pipeline.hpp"

using namespace wtm;
using wtm::testing::inst;
using wtm::testing::kMonday;

TEST_CASE("cycle time efficiency") {
  CHECK(compute_cte(25, 75) == 0.25);
  CHECK(compute_cte(25, 0) == 1.0);
  // 6.81% corresponds to 13.684 units of waiting per unit of processing.
  CHECK(compute_cte(1, 13.684) == doctest::Approx(0.0681).epsilon(1e-4));
  CHECK_THROWS_AS(compute_cte(0, 0), std::domain_error);
  CHECK_THROWS_AS(compute_cte(-1, 5), std::domain_error);
}

TEST_CASE("impact of a cause") {
  CHECK(cte_if_eliminated(25, 75, 75) == 1.0);
  CHECK(impact_of_cause(25, 75, 75) == doctest::Approx(0.75));
  CHECK(impact_of_cause(25, 75, 0) == 0.0);
  CHECK(cte_if_eliminated(0, 10, 10) == 1.0);
  // 57% of the waiting removed from a 6.81% process.
  const double wt = (1.0 - 0.0681) / 0.0681;
  CHECK(cte_if_eliminated(1, wt, 0.57 * wt) == doctest::Approx(0.1453).epsilon(1e-3));
}

TEST_CASE("impact of a transition") {
  CHECK(impact_of_transition(25, 75, 75) == doctest::Approx(1.0 - 0.25));
  CHECK(impact_of_transition(25, 75, 0) == 0.0);
  const double wt = (1.0 - 0.0681) / 0.0681;
  const double share = 1.0 - (1.0 / 0.0769 - 1.0) / wt;
  CHECK(share == doctest::Approx(0.1228).epsilon(1e-2));
  CHECK(cte_if_eliminated(1, wt, share * wt) == doctest::Approx(0.0769));
}

TEST_CASE("delta grows with the eliminated waiting time") {
  double prev = -1;
  for (double w = 0; w <= 100; w += 0.5) {
    const double d = impact_of_cause(10, 100, w);
    CHECK(d > prev);
    prev = d;
  }
}

TEST_CASE("report scoping and aggregation") {
  // First instances count toward processing time only.
  const EventLog log({inst("C1", "a", "R1", 0, 100, {}, kMonday), inst("C1", "b", "R2", 300, 400, {}, kMonday),
                      inst("C2", "a", "R1", 0, 50, {}, kMonday)});
  AnalysisConfig cfg;
  cfg.calendar_overrides = parse_calendar_overrides(nlohmann::json::parse(
      R"({"R2": [{"day": "MON", "from": "00:00", "to": "24:00"}]})"));
  const AnalysisResult r = analyze(log, cfg);
  CHECK(r.report.total_pt == 250);
  CHECK(r.report.total_wt == 200);
  CHECK(r.report.cte == doctest::Approx(250.0 / 450.0));
  CHECK(r.report.per_cause[static_cast<std::size_t>(Cause::Extraneous)].wt == 200);
  CHECK(r.report.per_cause[static_cast<std::size_t>(Cause::Extraneous)].share_of_wt == 1.0);
  REQUIRE(r.report.per_transition.size() == 1);
  CHECK(r.report.per_transition[0].cte_if_eliminated == 1.0);
  CHECK(r.report.per_transition[0].delta == doctest::Approx(200.0 / 450.0));
}

TEST_CASE("report invariants on random logs") {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 100; ++round) {
    std::vector<ActivityInstance> rows;
    for (int i = 0; i < 30; ++i) {
      const auto s = static_cast<Seconds>(rng() % 50000);
      rows.push_back(inst("c" + std::to_string(rng() % 6), std::string(1, static_cast<char>('a' + rng() % 3)),
                          "R" + std::to_string(rng() % 3), s, s + 1 + static_cast<Seconds>(rng() % 3000), {}, kMonday));
    }
    const AnalysisResult r = analyze(EventLog(rows));
    std::array<Seconds, kCauseCount> sums{};
    for (const auto& per_t : r.decompositions) {
      for (const WtDecomposition& d : per_t) {
        for (Cause c : kAllCauses) sums[static_cast<std::size_t>(c)] += d.duration(c);
      }
    }
    double share = 0;
    Seconds removed = 0;
    for (Cause c : kAllCauses) {
      const CauseImpact& ci = r.report.per_cause[static_cast<std::size_t>(c)];
      REQUIRE(ci.wt == sums[static_cast<std::size_t>(c)]);
      share += ci.share_of_wt;
      removed += ci.wt;
    }
    if (r.report.total_wt > 0) REQUIRE(share == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(removed == r.report.total_wt);
    REQUIRE(cte_if_eliminated(static_cast<double>(r.report.total_pt), static_cast<double>(r.report.total_wt),
                              static_cast<double>(removed)) == 1.0);
  }
}
