#include <doctest.h>

#include "mpdc/json_log.hpp"
#include "mpdc/model.hpp"

using namespace mpdc;

TEST_CASE("all twelve templates are representable and classified") {
  CHECK(std::size(kAllTemplates) == 12);
  int negatives = 0;
  for (Template t : kAllTemplates) {
    CHECK(template_from_name(template_name(t)) == t);
    if (is_negative(t)) {
      ++negatives;
      auto pos = positive_counterpart(t);
      REQUIRE(pos.has_value());
      CHECK_FALSE(is_negative(*pos));
      CHECK(direction(t) == direction(*pos));
    } else {
      CHECK_FALSE(positive_counterpart(t).has_value());
    }
  }
  CHECK(negatives == 5);
}

TEST_CASE("template name lookup is forgiving about case and separators") {
  CHECK(template_from_name("alternate response") == Template::AlternateResponse);
  CHECK(template_from_name("not_chain_precedence") == Template::NotChainPrecedence);
  CHECK(template_from_name("RESPONDEDEXISTENCE") == Template::RespondedExistence);
  CHECK_FALSE(template_from_name("existence").has_value());
}

TEST_CASE("parse_model on representative constraint lines") {
  Model m = parse_model(
      "# comment line\n"
      "Response[A_SUBMITTED; A_ACCEPTED] | - | - | 0,24,h\n"
      "Precedence[ca-125 using meia; outpatient follow-up consultation] | "
      "A.Diagnosis == 'maligniteit ovarium or tuba' | - | 0,15,d\n"
      "NotResponse[Open; Reopen] | - | A.org:resource != T.org:resource | -\n");
  REQUIRE(m.constraints.size() == 3);

  const Constraint& c1 = m.constraints[0];
  CHECK(c1.id == "1");
  CHECK(c1.tmpl == Template::Response);
  CHECK(c1.activations == std::vector<std::string>{"A_SUBMITTED"});
  CHECK(c1.targets == std::vector<std::string>{"A_ACCEPTED"});
  CHECK(c1.activation_condition->is_constant_true());
  CHECK(c1.time_condition.upper == 86'400'000);

  const Constraint& c2 = m.constraints[1];
  CHECK(c2.tmpl == Template::Precedence);
  CHECK(c2.activations == std::vector<std::string>{"ca-125 using meia"});
  CHECK_FALSE(c2.activation_condition->is_constant_true());
  CHECK(c2.time_condition.upper == 1'296'000'000);

  const Constraint& c3 = m.constraints[2];
  CHECK(c3.tmpl == Template::NotResponse);
  CHECK(c3.time_condition.is_unconstrained());
}

TEST_CASE("parameter lists split on ';' between sets and ',' within") {
  Model m = parse_model("Response[a, b; c, d] | - | - | -\n");
  CHECK(m.constraints[0].activations == std::vector<std::string>{"a", "b"});
  CHECK(m.constraints[0].targets == std::vector<std::string>{"c", "d"});
}

TEST_CASE("model parse errors name the line") {
  auto expect_line = [](const std::string& text, const std::string& needle) {
    try {
      parse_model(text);
      FAIL_CHECK("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_line("Nonsense[a; b] | - | - | -\n", "line 1");
  expect_line("\nResponse[; b] | - | - | -\n", "line 2");
  expect_line("Response[a; b] | T.x == 1 | - | -\n", "line 1");
  expect_line("Response[a; b] | - | - | 9,5,h\n", "line 1");
  expect_line("Response[a; b] | - | -\n", "line 1");
}

TEST_CASE("render_model reparses to the same model") {
  std::string text =
      "Response[a; b] | A.x >= 10 | A.x <= T.x | 0,24,h\n"
      "AlternatePrecedence[pick, pack; ship] | - | A.org:group == T.org:group | 10,90,m\n";
  Model m = parse_model(text);
  Model again = parse_model(render_model(m));
  REQUIRE(again.constraints.size() == m.constraints.size());
  for (std::size_t i = 0; i < m.constraints.size(); ++i) {
    CHECK(again.constraints[i].tmpl == m.constraints[i].tmpl);
    CHECK(again.constraints[i].activations == m.constraints[i].activations);
    CHECK(again.constraints[i].targets == m.constraints[i].targets);
    CHECK(structurally_equal(*again.constraints[i].activation_condition,
                             *m.constraints[i].activation_condition));
    CHECK(again.constraints[i].time_condition == m.constraints[i].time_condition);
  }
}

TEST_CASE("validate_model warns on unknown activities and attributes") {
  EventLog log = parse_json_log(
      R"({"traces":[{"id":"c1","events":[{"a":"pay","t":0,"attrs":{"amount":3}}]}]})");

  Model ok = parse_model("Response[pay; pay] | A.amount >= 1 | - | -\n");
  CHECK(validate_model(ok, log).empty());

  Model missing_act = parse_model("Response[zzz; pay] | - | - | -\n");
  CHECK(validate_model(missing_act, log).size() == 1);

  Model missing_attr = parse_model("Response[pay; pay] | A.ghost == 1 | - | -\n");
  auto warnings = validate_model(missing_attr, log);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("ghost") != std::string::npos);
}
