#ifndef MPDC_ORACLE_HPP
#define MPDC_ORACLE_HPP

#include "mpdc/engine.hpp"
#include "mpdc/event_log.hpp"
#include "mpdc/model.hpp"

namespace mpdc {

/// Read-only timed-structure view over a trace: per position, the
/// activity predicate, the payload snapshot, and the timestamp.
class TimedStructureView {
 public:
  explicit TimedStructureView(const Trace& trace);

  std::size_t size() const { return trace_->events.size(); }
  const std::string& activity(std::size_t i) const { return trace_->events[i].activity; }
  std::int64_t timestamp(std::size_t i) const { return trace_->events[i].timestamp; }
  const PayloadSnapshot& payload(std::size_t i) const { return payloads_[i]; }
  const std::string& case_id() const { return trace_->case_id; }

 private:
  const Trace* trace_;
  std::vector<PayloadSnapshot> payloads_;
};

/// Brute-force per-activation classification by exhaustive
/// quantification over positions. Deliberately unoptimized; used to
/// cross-validate the engine.
CheckResult oracle_classify(const Trace& trace, const Constraint& constraint);

/// Whole-trace satisfaction of the constraint's formula.
bool oracle_satisfies(const Trace& trace, const Constraint& constraint);

}  // namespace mpdc

#endif
