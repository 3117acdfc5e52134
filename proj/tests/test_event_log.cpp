#include <doctest.h>

#include "mpdc/event_log.hpp"

using namespace mpdc;

namespace {

Trace make_trace(std::string case_id, std::vector<Event> events) {
  Trace t;
  t.case_id = std::move(case_id);
  for (std::size_t i = 0; i < events.size(); ++i) events[i].index = i;
  t.events = std::move(events);
  return t;
}

}  // namespace

TEST_CASE("payload_at merges case attributes without overwrite") {
  Trace t = make_trace("c1", {{"a", 0, {{"amount", std::int64_t{5}}}, 0}});
  t.case_attributes["Diagnosis"] = std::string("X");

  auto snap = payload_at(t, 0);
  CHECK(std::get<std::string>(*snap.find("Diagnosis")) == "X");
  CHECK(std::get<std::int64_t>(*snap.find("amount")) == 5);
}

TEST_CASE("payload_at keeps the latest write") {
  Trace t = make_trace("c1", {{"a", 0, {{"amount", std::int64_t{5}}}, 0},
                              {"b", 1, {{"amount", std::int64_t{7}}}, 1}});
  CHECK(std::get<std::int64_t>(*payload_at(t, 0).find("amount")) == 5);
  CHECK(std::get<std::int64_t>(*payload_at(t, 1).find("amount")) == 7);
}

TEST_CASE("payload_at with no writes equals the previous snapshot") {
  Trace t = make_trace("c1", {{"a", 0, {{"x", std::int64_t{1}}}, 0}, {"b", 1, {}, 1}});
  CHECK(payload_at(t, 1) == payload_at(t, 0));
}

TEST_CASE("event attributes shadow case attributes of the same name") {
  Trace t = make_trace("c1", {{"a", 0, {{"amount", std::int64_t{9}}}, 0}});
  t.case_attributes["amount"] = std::int64_t{1};
  CHECK(std::get<std::int64_t>(*payload_at(t, 0).find("amount")) == 9);
}

TEST_CASE("payload_at rejects out-of-range index") {
  Trace t = make_trace("c1", {{"a", 0, {}, 0}});
  CHECK_THROWS_AS(payload_at(t, 1), std::out_of_range);
}

TEST_CASE("TracePayloads matches payload_at at every position") {
  Trace t = make_trace("c1", {{"a", 0, {{"x", std::int64_t{1}}}, 0},
                              {"b", 5, {{"y", std::int64_t{2}}}, 1},
                              {"c", 9, {{"x", std::int64_t{3}}}, 2}});
  t.case_attributes["k"] = std::string("v");
  TracePayloads payloads(t);
  for (std::size_t i = 0; i < t.events.size(); ++i) CHECK(payloads.at(i) == payload_at(t, i));
}

TEST_CASE("validate_log rejects non-monotonic timestamps") {
  EventLog log;
  log.traces.push_back(make_trace("c1", {{"a", 5000, {}, 0}, {"b", 3000, {}, 1}}));
  CHECK_THROWS_AS(validate_log(log), ValidationError);

  sort_traces_by_timestamp(log);
  CHECK_NOTHROW(validate_log(log));
  CHECK(log.traces[0].events[0].activity == "b");
  CHECK(log.traces[0].events[0].index == 0);
}

TEST_CASE("validate_log rejects duplicate case ids and empty activities") {
  EventLog log;
  log.traces.push_back(make_trace("c1", {}));
  log.traces.push_back(make_trace("c1", {}));
  CHECK_THROWS_AS(validate_log(log), ValidationError);

  EventLog log2;
  log2.traces.push_back(make_trace("c1", {{"", 0, {}, 0}}));
  CHECK_THROWS_AS(validate_log(log2), ValidationError);
}

TEST_CASE("stable sort preserves file order on equal timestamps") {
  EventLog log;
  log.traces.push_back(make_trace("c1", {{"first", 10, {}, 0},
                                         {"second", 5, {}, 1},
                                         {"third", 5, {}, 2}}));
  sort_traces_by_timestamp(log);
  CHECK(log.traces[0].events[0].activity == "second");
  CHECK(log.traces[0].events[1].activity == "third");
  CHECK(log.traces[0].events[2].activity == "first");
}
