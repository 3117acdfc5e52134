#include "mpdc/oracle.hpp"

#include <algorithm>

namespace mpdc {
namespace {

bool activation_holds(const TimedStructureView& view, const Constraint& c, std::size_t i) {
  return c.is_activation_activity(view.activity(i)) &&
         verify_activation(*c.activation_condition, view.payload(i));
}

// Candidate target at j for the activation at i, with the time pair
// oriented by relative position: a future target must fall in
// [tau_i + a, tau_i + b), a past target in [tau_j + a, tau_j + b)
// measured up to tau_i.
bool target_matches(const TimedStructureView& view, const Constraint& c, std::size_t i,
                    std::size_t j) {
  if (!c.is_target_activity(view.activity(j))) return false;
  if (!verify_correlation(*c.correlation_condition, view.payload(i), view.payload(j)))
    return false;
  std::int64_t delta = j >= i ? view.timestamp(j) - view.timestamp(i)
                              : view.timestamp(i) - view.timestamp(j);
  return c.time_condition.contains(delta);
}

// Target-existence subformula of each positive template, anchored at
// activation position i.
bool existence_holds(const TimedStructureView& view, const Constraint& c, Template tmpl,
                     std::size_t i) {
  const std::size_t n = view.size();
  switch (tmpl) {
    case Template::Response:
      for (std::size_t j = i + 1; j < n; ++j)
        if (target_matches(view, c, i, j)) return true;
      return false;
    case Template::Precedence:
      for (std::size_t j = 0; j < i; ++j)
        if (target_matches(view, c, i, j)) return true;
      return false;
    case Template::RespondedExistence:
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && target_matches(view, c, i, j)) return true;
      return false;
    case Template::ChainResponse:
      return i + 1 < n && target_matches(view, c, i, i + 1);
    case Template::ChainPrecedence:
      return i > 0 && target_matches(view, c, i, i - 1);
    case Template::AlternateResponse:
      // No further activation may interleave before (or coincide with)
      // the discharging target.
      for (std::size_t j = i + 1; j < n; ++j) {
        if (activation_holds(view, c, j)) return false;
        if (target_matches(view, c, i, j)) return true;
      }
      return false;
    case Template::AlternatePrecedence:
      for (std::size_t j = i; j-- > 0;) {
        if (activation_holds(view, c, j)) return false;
        if (target_matches(view, c, i, j)) return true;
      }
      return false;
    default:
      throw std::invalid_argument("oracle: template has no positive existence subformula");
  }
}

}  // namespace

TimedStructureView::TimedStructureView(const Trace& trace) : trace_(&trace) {
  payloads_.reserve(trace.events.size());
  for (std::size_t i = 0; i < trace.events.size(); ++i)
    payloads_.push_back(payload_at(trace, i));
}

CheckResult oracle_classify(const Trace& trace, const Constraint& constraint) {
  TimedStructureView view(trace);
  Template positive = is_negative(constraint.tmpl)
                          ? *positive_counterpart(constraint.tmpl)
                          : constraint.tmpl;
  CheckResult result;
  result.case_id = trace.case_id;
  result.constraint_id = constraint.id;
  for (std::size_t i = 0; i < view.size(); ++i) {
    if (!activation_holds(view, constraint, i)) continue;
    bool exists = existence_holds(view, constraint, positive, i);
    if (is_negative(constraint.tmpl)) exists = !exists;
    (exists ? result.fulfillments : result.violations).push_back(i);
  }
  return result;
}

bool oracle_satisfies(const Trace& trace, const Constraint& constraint) {
  return oracle_classify(trace, constraint).violations.empty();
}

}  // namespace mpdc
