#include "mpdc/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

namespace mpdc {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string normalize_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == ' ' || c == '_' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    std::string t = trim(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

Direction direction(Template t) {
  switch (t) {
    case Template::RespondedExistence:
    case Template::NotRespondedExistence:
      return Direction::Bidirectional;
    case Template::Response:
    case Template::AlternateResponse:
    case Template::ChainResponse:
    case Template::NotResponse:
    case Template::NotChainResponse:
      return Direction::Forward;
    case Template::Precedence:
    case Template::AlternatePrecedence:
    case Template::ChainPrecedence:
    case Template::NotPrecedence:
    case Template::NotChainPrecedence:
      return Direction::Backward;
  }
  return Direction::Forward;
}

bool is_negative(Template t) {
  switch (t) {
    case Template::NotRespondedExistence:
    case Template::NotResponse:
    case Template::NotPrecedence:
    case Template::NotChainResponse:
    case Template::NotChainPrecedence:
      return true;
    default:
      return false;
  }
}

std::optional<Template> positive_counterpart(Template t) {
  switch (t) {
    case Template::NotRespondedExistence: return Template::RespondedExistence;
    case Template::NotResponse: return Template::Response;
    case Template::NotPrecedence: return Template::Precedence;
    case Template::NotChainResponse: return Template::ChainResponse;
    case Template::NotChainPrecedence: return Template::ChainPrecedence;
    default: return std::nullopt;
  }
}

std::string template_name(Template t) {
  switch (t) {
    case Template::RespondedExistence: return "RespondedExistence";
    case Template::Response: return "Response";
    case Template::AlternateResponse: return "AlternateResponse";
    case Template::ChainResponse: return "ChainResponse";
    case Template::Precedence: return "Precedence";
    case Template::AlternatePrecedence: return "AlternatePrecedence";
    case Template::ChainPrecedence: return "ChainPrecedence";
    case Template::NotRespondedExistence: return "NotRespondedExistence";
    case Template::NotResponse: return "NotResponse";
    case Template::NotPrecedence: return "NotPrecedence";
    case Template::NotChainResponse: return "NotChainResponse";
    case Template::NotChainPrecedence: return "NotChainPrecedence";
  }
  return "Response";
}

std::optional<Template> template_from_name(const std::string& name) {
  std::string key = normalize_name(name);
  for (Template t : kAllTemplates)
    if (normalize_name(template_name(t)) == key) return t;
  return std::nullopt;
}

bool Constraint::is_activation_activity(const std::string& activity) const {
  return std::find(activations.begin(), activations.end(), activity) != activations.end();
}

bool Constraint::is_target_activity(const std::string& activity) const {
  return std::find(targets.begin(), targets.end(), activity) != targets.end();
}

Model parse_model(const std::string& text, const std::string& name) {
  Model model;
  model.name = name;
  std::istringstream is(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t ordinal = 0;

  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("model line " + std::to_string(line_no) + ": " + msg, line_no);
  };

  while (std::getline(is, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::size_t lb = line.find('[');
    std::size_t rb = line.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb)
      fail("expected 'TemplateName[activations; targets] | phi_a | phi_c | phi_tau'");

    std::string tmpl_name = trim(line.substr(0, lb));
    auto tmpl = template_from_name(tmpl_name);
    if (!tmpl) fail("unknown template '" + tmpl_name + "'");

    std::string params = line.substr(lb + 1, rb - lb - 1);
    std::size_t semi = params.find(';');
    if (semi == std::string::npos) fail("expected ';' between activation and target lists");

    Constraint c;
    c.tmpl = *tmpl;
    c.activations = split_list(params.substr(0, semi), ',');
    c.targets = split_list(params.substr(semi + 1), ',');
    if (c.activations.empty()) fail("empty activation list");
    if (c.targets.empty()) fail("empty target list");

    std::vector<std::string> fields = {"-", "-", "-"};
    std::string rest = trim(line.substr(rb + 1));
    if (!rest.empty()) {
      if (rest.front() != '|') fail("expected '|' after parameter list");
      auto pieces = [&] {
        std::vector<std::string> out;
        std::string item;
        std::istringstream rs(rest.substr(1));
        while (std::getline(rs, item, '|')) out.push_back(trim(item));
        return out;
      }();
      if (pieces.size() != 3) fail("expected three '|'-separated condition fields");
      fields = pieces;
    }

    try {
      c.activation_condition = parse_condition(fields[0], SidePolicy::Activation);
      c.correlation_condition = parse_condition(fields[1], SidePolicy::Correlation);
      c.time_condition = parse_time_window(fields[2]);
    } catch (const ParseError& e) {
      fail(e.what());
    }

    c.id = std::to_string(++ordinal);
    model.constraints.push_back(std::move(c));
  }

  std::unordered_set<std::string> ids;
  for (const auto& c : model.constraints)
    if (!ids.insert(c.id).second)
      throw ParseError("model: duplicate constraint id '" + c.id + "'");
  return model;
}

std::string render_model(const Model& model) {
  std::ostringstream os;
  for (const auto& c : model.constraints) {
    os << template_name(c.tmpl) << '[';
    for (std::size_t i = 0; i < c.activations.size(); ++i)
      os << (i ? ", " : "") << c.activations[i];
    os << "; ";
    for (std::size_t i = 0; i < c.targets.size(); ++i)
      os << (i ? ", " : "") << c.targets[i];
    os << "] | " << render_condition(*c.activation_condition)
       << " | " << render_condition(*c.correlation_condition)
       << " | " << render_time_window(c.time_condition) << '\n';
  }
  return os.str();
}

std::vector<std::string> validate_model(const Model& model, const EventLog& log) {
  std::unordered_set<std::string> activities;
  std::unordered_set<std::string> attributes;
  for (const auto& trace : log.traces) {
    for (const auto& [name, _] : trace.case_attributes) attributes.insert(name);
    for (const auto& event : trace.events) {
      activities.insert(event.activity);
      for (const auto& [name, _] : event.attributes) attributes.insert(name);
    }
  }

  std::vector<std::string> warnings;
  for (const auto& c : model.constraints) {
    for (const auto& lists : {c.activations, c.targets})
      for (const auto& act : lists)
        if (!activities.count(act))
          warnings.push_back("constraint " + c.id + ": activity '" + act +
                             "' never occurs in the log");
    std::unordered_set<std::string> reported;
    for (const ConditionPtr& cond : {c.activation_condition, c.correlation_condition})
      for (const auto& attr : referenced_attributes(*cond))
        if (!attributes.count(attr) && reported.insert(attr).second)
          warnings.push_back("constraint " + c.id + ": attribute '" + attr +
                             "' never appears in the log");
  }
  return warnings;
}

}  // namespace mpdc
