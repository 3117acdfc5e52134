#ifndef MPDC_ENGINE_HPP
#define MPDC_ENGINE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "mpdc/event_log.hpp"
#include "mpdc/model.hpp"

namespace mpdc {

/// Per (trace, constraint) partition of activation events into
/// fulfillments and violations. Indices are 0-based trace positions,
/// kept sorted; the two sets are disjoint.
struct CheckResult {
  std::string case_id;
  std::string constraint_id;
  std::vector<std::size_t> fulfillments;
  std::vector<std::size_t> violations;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

/// Swaps the fulfillment and violation sets (negative-template rule).
CheckResult invert_negative(CheckResult result);

/// Checks one trace against one constraint. Dispatches to the
/// template's procedure set; backward templates iterate the trace
/// reversed, negative templates run the positive counterpart and swap.
CheckResult check_trace_conformance(const Trace& trace, const TracePayloads& payloads,
                                    const Constraint& constraint);

CheckResult check_trace_conformance(const Trace& trace, const Constraint& constraint);

/// Checks every trace against every constraint. Output order is
/// (trace order, constraint order) regardless of worker count.
std::vector<CheckResult> check_log_conformance(const EventLog& log, const Model& model,
                                               unsigned workers = 1);

}  // namespace mpdc

#endif
