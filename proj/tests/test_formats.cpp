#include <doctest.h>

#include "mpdc/json_log.hpp"
#include "mpdc/loggen.hpp"
#include "mpdc/xes.hpp"

using namespace mpdc;

namespace {

const char* kSimpleXes = R"(<?xml version="1.0" encoding="UTF-8"?>
<log xes.version="1.0">
  <trace>
    <string key="concept:name" value="t1"/>
    <event>
      <string key="concept:name" value="a"/>
      <date key="time:timestamp" value="1970-01-01T00:00:00.000Z"/>
    </event>
    <event>
      <string key="concept:name" value="b"/>
      <date key="time:timestamp" value="1970-01-01T00:00:01.000Z"/>
    </event>
  </trace>
</log>
)";

}  // namespace

TEST_CASE("parse_xes maps traces and events structurally") {
  EventLog log = parse_xes(std::string(kSimpleXes));
  REQUIRE(log.traces.size() == 1);
  REQUIRE(log.traces[0].events.size() == 2);
  CHECK(log.traces[0].case_id == "t1");
  CHECK(log.traces[0].events[0].activity == "a");
  CHECK(log.traces[0].events[0].timestamp == 0);
  CHECK(log.traces[0].events[1].activity == "b");
  CHECK(log.traces[0].events[1].timestamp == 1000);
}

TEST_CASE("lifecycle transition suffixes the activity key") {
  std::string xes = R"(<log><trace>
    <string key="concept:name" value="t1"/>
    <event>
      <string key="concept:name" value="W_Valideren aanvraag"/>
      <string key="lifecycle:transition" value="SCHEDULE"/>
      <date key="time:timestamp" value="2011-01-01T00:00:00Z"/>
    </event>
    <event>
      <string key="concept:name" value="W_Valideren aanvraag"/>
      <string key="lifecycle:transition" value="complete"/>
      <date key="time:timestamp" value="2011-01-01T01:00:00Z"/>
    </event>
  </trace></log>)";
  EventLog log = parse_xes(xes);
  CHECK(log.traces[0].events[0].activity == "W_Valideren aanvraag-SCHEDULE");
  CHECK(log.traces[0].events[1].activity == "W_Valideren aanvraag");
}

TEST_CASE("non-monotonic trace rejected unless sort_on_load") {
  std::string xes = R"(<log><trace>
    <string key="concept:name" value="t1"/>
    <event><string key="concept:name" value="a"/>
           <date key="time:timestamp" value="1970-01-01T00:00:05Z"/></event>
    <event><string key="concept:name" value="b"/>
           <date key="time:timestamp" value="1970-01-01T00:00:03Z"/></event>
  </trace></log>)";
  CHECK_THROWS_AS(parse_xes(xes), ValidationError);

  XesOptions opts;
  opts.sort_on_load = true;
  EventLog log = parse_xes(xes, opts);
  CHECK(log.traces[0].events[0].activity == "b");
}

TEST_CASE("event without concept:name is a validation error naming the trace") {
  std::string xes = R"(<log><trace>
    <string key="concept:name" value="t9"/>
    <event><date key="time:timestamp" value="1970-01-01T00:00:00Z"/></event>
  </trace></log>)";
  try {
    parse_xes(xes);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("t9") != std::string::npos);
  }
}

TEST_CASE("malformed XML reports line position") {
  try {
    parse_xes(std::string("<log>\n  <trace =</trace></log>"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("iso8601 with timezone offsets") {
  CHECK(parse_iso8601("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_iso8601("1970-01-01T01:00:00+01:00") == 0);
  CHECK(parse_iso8601("1969-12-31T23:00:00-01:00") == 0);
  CHECK(parse_iso8601("1970-01-01T00:00:00.123Z") == 123);
  CHECK(parse_iso8601("2011-10-01T00:38:44.546+02:00") ==
        parse_iso8601("2011-09-30T22:38:44.546Z"));
  CHECK_THROWS_AS(parse_iso8601("not a date"), ParseError);
}

TEST_CASE("iso8601 render/parse round-trip") {
  for (std::int64_t ms : {std::int64_t{0}, std::int64_t{123}, std::int64_t{1696156799999},
                          std::int64_t{-86400000}}) {
    CHECK(parse_iso8601(format_iso8601(ms)) == ms);
  }
}

TEST_CASE("json log minimal fixture") {
  EventLog log = parse_json_log(R"({"traces":[{"id":"c1","events":[{"a":"pay","t":0}]}]})");
  REQUIRE(log.traces.size() == 1);
  REQUIRE(log.traces[0].events.size() == 1);
  CHECK(log.traces[0].case_id == "c1");
  CHECK(log.traces[0].events[0].activity == "pay");
  CHECK(log.traces[0].events[0].timestamp == 0);
}

TEST_CASE("json event missing t is a parse error naming the path") {
  try {
    parse_json_log(R"({"traces":[{"id":"c1","events":[{"a":"pay"}]}]})");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("events[0]") != std::string::npos);
  }
}

TEST_CASE("json and xes encodings of the same log are structurally equal") {
  std::string json = R"({"traces":[{"id":"t1","events":[
    {"a":"a","t":0},{"a":"b","t":1000}]}]})";
  EventLog from_json = parse_json_log(json);
  EventLog from_xes = parse_xes(std::string(kSimpleXes));
  from_json.source_name = from_xes.source_name = "";
  CHECK(from_json == from_xes);
}

TEST_CASE("xes round-trip preserves all five attribute kinds") {
  EventLog log;
  Trace t;
  t.case_id = "c1";
  t.case_attributes["note"] = std::string("hello & <world>");
  Event e;
  e.activity = "a";
  e.timestamp = 1234;
  e.attributes["s"] = std::string("text");
  e.attributes["i"] = std::int64_t{-42};
  e.attributes["r"] = 3.25;
  e.attributes["b"] = true;
  e.attributes["ts"] = Timestamp{987654321};
  t.events.push_back(e);
  log.traces.push_back(t);

  EventLog back = parse_xes(write_xes(log));
  CHECK(back == log);
}

TEST_CASE("generated logs round-trip through both formats") {
  auto spec = default_random_spec(7, 5, 6);
  EventLog log = generate(spec);
  EventLog via_xes = parse_xes(write_xes(log));
  via_xes.source_name = log.source_name;
  CHECK(via_xes == log);

  EventLog via_json = parse_json_log(render_json_log(log));
  via_json.source_name = log.source_name;
  CHECK(via_json == log);
}
