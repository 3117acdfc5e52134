#ifndef MPDC_MODEL_HPP
#define MPDC_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "mpdc/condition.hpp"
#include "mpdc/event_log.hpp"

namespace mpdc {

/// The twelve constraint templates with multi-perspective semantics.
enum class Template {
  RespondedExistence,
  Response,
  AlternateResponse,
  ChainResponse,
  Precedence,
  AlternatePrecedence,
  ChainPrecedence,
  NotRespondedExistence,
  NotResponse,
  NotPrecedence,
  NotChainResponse,
  NotChainPrecedence,
};

inline constexpr Template kAllTemplates[] = {
    Template::RespondedExistence, Template::Response,
    Template::AlternateResponse,  Template::ChainResponse,
    Template::Precedence,         Template::AlternatePrecedence,
    Template::ChainPrecedence,    Template::NotRespondedExistence,
    Template::NotResponse,        Template::NotPrecedence,
    Template::NotChainResponse,   Template::NotChainPrecedence,
};

enum class Direction { Forward, Backward, Bidirectional };

Direction direction(Template t);
bool is_negative(Template t);
/// Defined exactly for negative templates.
std::optional<Template> positive_counterpart(Template t);
std::string template_name(Template t);
std::optional<Template> template_from_name(const std::string& name);

struct Constraint {
  std::string id;
  Template tmpl = Template::Response;
  std::vector<std::string> activations;  // non-empty set of activity keys (A)
  std::vector<std::string> targets;      // non-empty set of activity keys (T)
  ConditionPtr activation_condition;     // passed activation policy
  ConditionPtr correlation_condition;    // may reference both sides
  TimeWindow time_condition;

  bool is_activation_activity(const std::string& activity) const;
  bool is_target_activity(const std::string& activity) const;
};

struct Model {
  std::vector<Constraint> constraints;
  std::string name;
};

/// Parses the textual model DSL: one constraint per line,
///   TemplateName[act{,act}; targ{,targ}] | phi_a | phi_c | phi_tau
/// '#' starts a comment; '-' stands for an absent condition. Constraint
/// ids default to 1-based line ordinals.
Model parse_model(const std::string& text, const std::string& name = "");

std::string render_model(const Model& model);

/// Non-fatal sanity checks against a concrete log: activities that never
/// occur, attributes that are never written.
std::vector<std::string> validate_model(const Model& model, const EventLog& log);

}  // namespace mpdc

#endif
