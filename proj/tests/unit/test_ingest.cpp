#include <doctest.h>

#include <sstream>

#include "wtm/error.hpp"
#include "wtm/ingest.hpp"

using namespace wtm;

namespace {

IngestResult parse(const std::string& csv, const ColumnMapping& m = {}) {
  std::istringstream in(csv);
  return parse_log(in, m);
}

const std::string kHeader = "case_id,activity,resource,start_time,end_time\n";

}  // namespace

TEST_CASE("single row maps fields directly") {
  const auto r = parse(kHeader + "C1,A,R1,2023-01-02T09:00:00Z,2023-01-02T09:30:00Z\n");
  REQUIRE(r.log.size() == 1);
  const ActivityInstance& a = r.log[0];
  CHECK(a.case_id == "C1");
  CHECK(a.activity == "A");
  CHECK(a.resource == "R1");
  CHECK(a.processing().duration() == 1800);
  CHECK_FALSE(a.enabled);
  CHECK(r.stats.rows == 1);
  CHECK(r.stats.accepted == 1);
}

TEST_CASE("end before start is rejected and counted") {
  const auto r = parse(kHeader +
                       "C1,A,R1,2023-01-02T09:00:00Z,2023-01-02T08:59:00Z\n"
                       "C1,B,R1,2023-01-02T09:00:00Z,2023-01-02T09:10:00Z\n");
  CHECK(r.stats.rejected_end_before_start == 1);
  CHECK(r.stats.accepted == 1);
  CHECK(r.stats.rows == r.stats.accepted + r.stats.rejected());
}

TEST_CASE("rows group into cases") {
  std::string csv = kHeader;
  for (const char* c : {"C3", "C1", "C2"}) {
    csv += std::string(c) + ",A,R1,2023-01-02T09:00:00Z,2023-01-02T09:10:00Z\n";
    csv += std::string(c) + ",B,R2,2023-01-02T10:00:00Z,2023-01-02T10:10:00Z\n";
  }
  const auto r = parse(csv);
  CHECK(r.log.case_count() == 3);
  CHECK(r.log.size() == 6);
  for (const CaseSpan& c : r.log.cases()) {
    CHECK(c.size() == 2);
    CHECK(r.log[c.begin].activity == "A");
  }
  CHECK(r.log.cases()[0].id == "C1");
}

TEST_CASE("quality counters") {
  const auto r = parse(kHeader +
                       "C1,A,,2023-01-02 09:00:00.250,2023-01-02T09:30:00Z\n"
                       "C1,B,R1,not a date,2023-01-02T09:30:00Z\n"
                       "C1,C,R1,2023-01-02T09:00:00Z\n"
                       ",D,R1,2023-01-02T09:00:00Z,2023-01-02T09:30:00Z\n"
                       "\n");
  CHECK(r.stats.rows == 4);
  CHECK(r.stats.accepted == 1);
  CHECK(r.stats.unknown_resource == 1);
  CHECK(r.stats.truncated_subsecond == 1);
  CHECK(r.stats.assumed_utc == 1);
  CHECK(r.stats.rejected_bad_timestamp == 1);
  CHECK(r.stats.rejected_malformed_row == 2);
  CHECK(r.log[0].resource == kUnknownResource);
  CHECK_FALSE(r.log[0].has_known_resource());
  CHECK(r.log[0].started == make_instant(2023, 1, 2, 9));
}

TEST_CASE("custom mapping, quoting, BOM and CRLF") {
  ColumnMapping m;
  m.case_column = "Case ID";
  m.activity_column = "Activity";
  m.resource_column = "Resource";
  m.start_column = "Start";
  m.end_column = "End";
  m.enabled_column = "Enabled";
  const std::string csv =
      "\xEF\xBB\xBF" "Case ID, Activity ,Resource,Start,End,Enabled\r\n"
      "\"C,1\",\"Say \"\"hi\"\"\",R1,2023-01-02T09:00:00Z,2023-01-02T09:30:00Z,2023-01-02T08:00:00Z\r\n"
      "C2,\"multi\nline\",R1,2023-01-02T09:00:00Z,2023-01-02T09:30:00Z,\r\n"
      "C3,X,R1,2023-01-02T09:00:00Z,2023-01-02T09:30:00Z,2023-01-02T09:01:00Z\r\n";
  const auto r = parse(csv, m);
  REQUIRE(r.log.size() == 2);
  CHECK(r.stats.rejected_enabled_after_start == 1);
  CHECK(r.log[0].case_id == "C,1");
  CHECK(r.log[0].activity == "Say \"hi\"");
  CHECK(r.log[0].enabled == make_instant(2023, 1, 2, 8));
  CHECK(r.log[0].enablement_source == EnablementSource::Input);
  CHECK(r.log[1].activity == "multi\nline");
  CHECK_FALSE(r.log[1].enabled);
}

TEST_CASE("epoch format") {
  ColumnMapping m;
  m.timestamp_format = TimestampFormat::EpochSeconds;
  const auto r = parse(kHeader + "C1,A,R1,100,160\n", m);
  CHECK(r.log[0].started.seconds == 100);
  CHECK(r.log[0].completed.seconds == 160);
}

TEST_CASE("fatal errors") {
  CHECK_THROWS_AS(parse("case_id,activity,start_time,end_time\nC1,A,1,2\n"), ConfigError);
  CHECK_THROWS_AS(parse(kHeader + "C1,A,R1,bad,bad\n"), DataError);
  CHECK_THROWS_AS(parse(""), DataError);
  ColumnMapping dup;
  dup.end_column = dup.start_column;
  CHECK_THROWS_AS(dup.validate(), ConfigError);
  CHECK_THROWS_AS(load_log("/nonexistent/log.csv", {}), ConfigError);
}

TEST_CASE("mapping json round trip") {
  const auto m = ColumnMapping::from_json(nlohmann::json{{"case", "Case ID"},
                                                         {"activity", "Activity"},
                                                         {"resource", "Resource"},
                                                         {"start", "Start Timestamp"},
                                                         {"end", "Complete Timestamp"},
                                                         {"timestamp_format", "epoch"}});
  CHECK(m.case_column == "Case ID");
  CHECK(m.end_column == "Complete Timestamp");
  CHECK_FALSE(m.enabled_column);
  CHECK(m.timestamp_format == TimestampFormat::EpochSeconds);
  const auto back = ColumnMapping::from_json(m.to_json());
  CHECK(back.case_column == m.case_column);
  CHECK(back.start_column == m.start_column);
  CHECK(back.timestamp_format == m.timestamp_format);
  CHECK_THROWS_AS(ColumnMapping::from_json(nlohmann::json{{"timestamp_format", "rfc822"}}), ConfigError);
}

TEST_CASE("parsing is deterministic and independent of row order") {
  const std::string rows[] = {"C1,A,R1,2023-01-02T09:00:00Z,2023-01-02T09:10:00Z\n",
                              "C1,B,R2,2023-01-02T09:00:00Z,2023-01-02T09:10:00Z\n",
                              "C2,A,R1,2023-01-02T08:00:00Z,2023-01-02T09:10:00Z\n",
                              "C1,A,R3,2023-01-02T09:00:00Z,2023-01-02T09:10:00Z\n"};
  const auto a = parse(kHeader + rows[0] + rows[1] + rows[2] + rows[3]);
  const auto b = parse(kHeader + rows[3] + rows[2] + rows[1] + rows[0]);
  REQUIRE(a.log.size() == b.log.size());
  for (InstanceId i = 0; i < a.log.size(); ++i) {
    CHECK(a.log[i].case_id == b.log[i].case_id);
    CHECK(a.log[i].activity == b.log[i].activity);
    CHECK(a.log[i].resource == b.log[i].resource);
  }
}
