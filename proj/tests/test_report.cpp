#include <doctest.h>

#include "mpdc/engine.hpp"
#include "mpdc/loggen.hpp"
#include "mpdc/report.hpp"

using namespace mpdc;

namespace {

// Log with one trace of n_events bare events plus one CheckResult holding
// the requested violation/fulfillment counts.
std::pair<EventLog, std::vector<CheckResult>> counts_fixture(std::size_t activations,
                                                             std::size_t violations) {
  EventLog log;
  Trace t;
  t.case_id = "c1";
  for (std::size_t i = 0; i < activations; ++i) {
    Event e;
    e.activity = "a";
    e.timestamp = static_cast<std::int64_t>(i);
    e.index = i;
    t.events.push_back(std::move(e));
  }
  log.traces.push_back(std::move(t));

  CheckResult r;
  r.case_id = "c1";
  r.constraint_id = "1";
  for (std::size_t i = 0; i < violations; ++i) r.violations.push_back(i);
  for (std::size_t i = violations; i < activations; ++i) r.fulfillments.push_back(i);
  return {std::move(log), std::vector<CheckResult>{std::move(r)}};
}

}  // namespace

TEST_CASE("published count pairs print their 4-decimal ratios exactly") {
  struct Row {
    std::size_t activations, violations;
    const char* ratio;
  };
  for (Row row : {Row{343, 242, "0.7055"}, Row{1286, 546, "0.4246"},
                  Row{13087, 7974, "0.6093"}, Row{46607, 2121, "0.0455"}}) {
    auto [log, results] = counts_fixture(row.activations, row.violations);
    auto stats = compute_stats(results, log);
    REQUIRE(stats.size() == 1);
    CHECK(stats[0].activations == row.activations);
    CHECK(format_ratio(stats[0].violation_ratio) == row.ratio);

    LogReport report;
    report.constraints = stats;
    std::string csv = render_csv(report);
    CHECK(csv.find(std::string(",") + row.ratio + ",") != std::string::npos);
  }
}

TEST_CASE("activations = violations + fulfillments and ratios sum to 1") {
  auto [log, results] = counts_fixture(17, 5);
  auto stats = compute_stats(results, log);
  CHECK(stats[0].activations == stats[0].violations + stats[0].fulfillments);
  CHECK(stats[0].violation_ratio + stats[0].fulfillment_ratio == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("zero activations zeroes both ratios and keeps sets empty") {
  auto [log, results] = counts_fixture(0, 0);
  auto stats = compute_stats(results, log);
  CHECK(stats[0].activations == 0);
  CHECK(stats[0].violation_ratio == 0.0);
  CHECK(stats[0].fulfillment_ratio == 0.0);
}

TEST_CASE("stats are additive across traces") {
  EventLog log;
  for (int i = 0; i < 2; ++i) {
    Trace t;
    t.case_id = "c" + std::to_string(i + 1);
    for (std::size_t j = 0; j < 4; ++j) {
      Event e;
      e.activity = "a";
      e.timestamp = static_cast<std::int64_t>(j);
      e.index = j;
      t.events.push_back(std::move(e));
    }
    log.traces.push_back(std::move(t));
  }
  std::vector<CheckResult> results{{"c1", "1", {0, 1}, {2}}, {"c2", "1", {0}, {1, 2, 3}}};
  auto stats = compute_stats(results, log);
  REQUIRE(stats.size() == 1);
  CHECK(stats[0].fulfillments == 3);
  CHECK(stats[0].violations == 4);
  CHECK(stats[0].activations == 7);
}

TEST_CASE("avg_activation_sparsity follows its definition") {
  // Trace 1: 4 events, 3 activations -> 0.25. Trace 2: 4 events, 0 -> 1.
  EventLog log;
  for (int i = 0; i < 2; ++i) {
    Trace t;
    t.case_id = "c" + std::to_string(i + 1);
    for (std::size_t j = 0; j < 4; ++j) {
      Event e;
      e.activity = "a";
      e.timestamp = static_cast<std::int64_t>(j);
      e.index = j;
      t.events.push_back(std::move(e));
    }
    log.traces.push_back(std::move(t));
  }
  std::vector<CheckResult> results{{"c1", "1", {0, 1}, {2}}, {"c2", "1", {}, {}}};
  auto stats = compute_stats(results, log);
  CHECK(stats[0].avg_activation_sparsity == doctest::Approx(0.625));
}

TEST_CASE("duplicate (trace, constraint) result is rejected") {
  auto [log, results] = counts_fixture(3, 1);
  results.push_back(results[0]);
  CHECK_THROWS_AS(compute_stats(results, log), std::invalid_argument);
}

TEST_CASE("build_report covers every model constraint even with no results") {
  EventLog log;
  log.source_name = "empty";
  Model model = parse_model("Response[a; b] | - | - | -\nPrecedence[c; d] | - | - | -\n");
  model.name = "m";
  LogReport report = build_report(log, model, {}, 7);
  REQUIRE(report.constraints.size() == 2);
  CHECK(report.constraints[0].constraint_id == "1");
  CHECK(report.constraints[1].constraint_id == "2");
  CHECK(report.constraints[1].activations == 0);
  CHECK(report.duration_ms == 7);
}

TEST_CASE("json report render -> parse -> render is a fixpoint") {
  EventLog log = generate(default_random_spec(55, 6, 8));
  Model model = parse_model(
      "Response[a; b] | A.x >= 40 | - | 0,2,h\n"
      "NotChainPrecedence[c; d] | - | A.x != T.x | -\n");
  model.name = "fixture";
  auto results = check_log_conformance(log, model);
  LogReport report = build_report(log, model, results, 12);

  std::string once = render_json(report);
  LogReport parsed = parse_json_report(once);
  std::string twice = render_json(parsed);
  CHECK(once == twice);
  CHECK(parsed.traces == report.traces);
  CHECK(parsed.model_name == "fixture");
}

TEST_CASE("csv uses CRLF rows and quotes embedded commas") {
  LogReport report;
  ConstraintStats s;
  s.constraint_id = "resp,onse";
  s.activations = 2;
  s.violations = 1;
  s.fulfillments = 1;
  s.violation_ratio = 0.5;
  s.fulfillment_ratio = 0.5;
  report.constraints.push_back(s);
  std::string csv = render_csv(report);
  CHECK(csv.find("\r\n\"resp,onse\",2,1,1,0.5000,0.5000,0.0000\r\n") != std::string::npos);
  CHECK(csv.rfind("id,activations,violations,fulfillments,", 0) == 0);
}
