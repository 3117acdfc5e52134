#ifndef MPDC_REPORT_HPP
#define MPDC_REPORT_HPP

#include <string>
#include <vector>

#include "mpdc/engine.hpp"
#include "mpdc/event_log.hpp"
#include "mpdc/model.hpp"

namespace mpdc {

/// Log-level statistics for one constraint. Ratios are violations
/// (resp. fulfillments) over total activations, 0 when there are no
/// activations.
struct ConstraintStats {
  std::string constraint_id;
  std::size_t activations = 0;
  std::size_t violations = 0;
  std::size_t fulfillments = 0;
  double violation_ratio = 0.0;
  double fulfillment_ratio = 0.0;
  /// Mean over traces of (1 - activations_in_trace / events_in_trace);
  /// 0 for empty traces. A locally defined measure of how rarely the
  /// constraint activates.
  double avg_activation_sparsity = 0.0;
};

struct LogReport {
  std::string model_name;
  std::string log_name;
  std::int64_t duration_ms = 0;
  std::vector<ConstraintStats> constraints;
  std::vector<CheckResult> traces;
};

/// Aggregates per-trace results into per-constraint statistics. Results
/// must cover every (trace, constraint) pair exactly once.
std::vector<ConstraintStats> compute_stats(const std::vector<CheckResult>& results,
                                           const EventLog& log);

LogReport build_report(const EventLog& log, const Model& model,
                       const std::vector<CheckResult>& results, std::int64_t duration_ms);

/// Stable-key-order JSON; render -> parse -> render is a fixpoint.
std::string render_json(const LogReport& report);
LogReport parse_json_report(const std::string& input);

/// One RFC-4180 row per constraint; ratios printed to 4 decimal places.
std::string render_csv(const LogReport& report);

std::string format_ratio(double ratio);

}  // namespace mpdc

#endif
