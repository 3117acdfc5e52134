#include "mpdc/engine.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace mpdc {
namespace {

// Shared view of one (trace, constraint) evaluation. For backward
// templates the event sequence is walked reversed and the time pair is
// oriented (tau_target, tau_activation); payload snapshots stay
// positional in both directions.
class TraceEval {
 public:
  TraceEval(const Trace& trace, const TracePayloads& payloads, const Constraint& c,
            bool backward)
      : trace_(trace), payloads_(payloads), c_(c), backward_(backward) {}

  std::size_t size() const { return trace_.events.size(); }

  // Maps iteration step to trace position.
  std::size_t pos(std::size_t step) const {
    return backward_ ? trace_.events.size() - 1 - step : step;
  }

  bool is_activation(std::size_t position) const {
    return c_.is_activation_activity(trace_.events[position].activity) &&
           verify_activation(*c_.activation_condition, payloads_.at(position));
  }

  bool is_target_activity(std::size_t position) const {
    return c_.is_target_activity(trace_.events[position].activity);
  }

  // Correlation and time checks for an (activation, target) pair.
  bool correlates(std::size_t act_pos, std::size_t target_pos) const {
    if (!verify_correlation(*c_.correlation_condition, payloads_.at(act_pos),
                            payloads_.at(target_pos)))
      return false;
    std::int64_t act_ts = trace_.events[act_pos].timestamp;
    std::int64_t target_ts = trace_.events[target_pos].timestamp;
    return backward_ ? verify_time(c_.time_condition, target_ts, act_ts)
                     : verify_time(c_.time_condition, act_ts, target_ts);
  }

 private:
  const Trace& trace_;
  const TracePayloads& payloads_;
  const Constraint& c_;
  bool backward_;
};

struct ProcedureState {
  std::vector<std::size_t> pending;           // trace positions
  std::vector<std::size_t> possible_targets;  // alternate templates only
  std::vector<std::size_t> fulfillments;
  std::vector<std::size_t> violations;
};

// Procedure set for the response template (and, run reversed, for
// precedence). Violations surface only in the closing procedure.
struct ResponseProcedures {
  static void opening(ProcedureState&, const TraceEval&) {}

  static void fulfillment(ProcedureState& s, const TraceEval& ev, std::size_t position) {
    if (!ev.is_target_activity(position)) return;
    auto it = s.pending.begin();
    while (it != s.pending.end()) {
      if (ev.correlates(*it, position)) {
        s.fulfillments.push_back(*it);
        it = s.pending.erase(it);
      } else {
        ++it;
      }
    }
  }

  static void violation(ProcedureState&, const TraceEval&, std::size_t) {}

  static void activation(ProcedureState& s, const TraceEval& ev, std::size_t position) {
    if (ev.is_activation(position)) s.pending.push_back(position);
  }

  static void closing(ProcedureState& s, const TraceEval&) {
    for (std::size_t act : s.pending) s.violations.push_back(act);
    s.pending.clear();
  }
};

// Alternate response / alternate precedence. At most one pending
// activation at a time; possible targets accumulate since the last
// activation and are reset whenever a new activation occurs.
struct AlternateProcedures {
  static void opening(ProcedureState& s, const TraceEval&) { s.possible_targets.clear(); }

  static void fulfillment(ProcedureState& s, const TraceEval& ev, std::size_t position) {
    if (ev.is_activation(position) && !s.possible_targets.empty() && s.pending.size() == 1) {
      std::size_t act = s.pending.front();
      for (std::size_t p : s.possible_targets) {
        if (ev.correlates(act, p)) {
          s.fulfillments.push_back(act);
          s.pending.clear();
          break;
        }
      }
    }
    if (ev.is_target_activity(position)) s.possible_targets.push_back(position);
  }

  static void violation(ProcedureState& s, const TraceEval& ev, std::size_t position) {
    if (ev.is_activation(position) && s.pending.size() == 1) {
      s.violations.push_back(s.pending.front());
      s.pending.clear();
    }
  }

  static void activation(ProcedureState& s, const TraceEval& ev, std::size_t position) {
    if (ev.is_activation(position)) {
      s.possible_targets.clear();
      s.pending.assign(1, position);
    }
  }

  static void closing(ProcedureState& s, const TraceEval& ev) {
    if (s.pending.size() != 1) return;
    std::size_t act = s.pending.front();
    bool target_found = false;
    for (std::size_t p : s.possible_targets) {
      if (ev.correlates(act, p)) {
        target_found = true;
        s.fulfillments.push_back(act);
        break;
      }
    }
    if (!target_found) s.violations.push_back(act);
    s.pending.clear();
  }
};

// Chain response / chain precedence. The pending activation must be
// discharged by the immediately following event.
struct ChainProcedures {
  static void opening(ProcedureState&, const TraceEval&) {}

  static void fulfillment(ProcedureState& s, const TraceEval& ev, std::size_t position) {
    if (s.pending.size() != 1) return;
    std::size_t act = s.pending.front();
    if (ev.is_target_activity(position) && ev.correlates(act, position)) {
      s.fulfillments.push_back(act);
      s.pending.clear();
    }
  }

  static void violation(ProcedureState& s, const TraceEval&, std::size_t) {
    // Anything the fulfillment procedure did not discharge is violated.
    if (s.pending.size() == 1) {
      s.violations.push_back(s.pending.front());
      s.pending.clear();
    }
  }

  static void activation(ProcedureState& s, const TraceEval& ev, std::size_t position) {
    if (ev.is_activation(position)) s.pending.push_back(position);
  }

  static void closing(ProcedureState& s, const TraceEval&) {
    for (std::size_t act : s.pending) s.violations.push_back(act);
    s.pending.clear();
  }
};

// Drives one procedure set over the trace in the call order of the
// framework: fulfillment, violation, activation per event; closing once.
template <typename Procedures>
void run_procedures(const TraceEval& ev, ProcedureState& state) {
  Procedures::opening(state, ev);
  for (std::size_t step = 0; step < ev.size(); ++step) {
    std::size_t position = ev.pos(step);
    Procedures::fulfillment(state, ev, position);
    Procedures::violation(state, ev, position);
    Procedures::activation(state, ev, position);
  }
  Procedures::closing(state, ev);
}

// Responded existence runs the response procedures in both directions
// and combines them: an activation is a fulfillment iff a correlated
// target exists in either direction.
void run_responded_existence(const Trace& trace, const TracePayloads& payloads,
                             const Constraint& c, ProcedureState& state) {
  ProcedureState forward_state;
  run_procedures<ResponseProcedures>(TraceEval(trace, payloads, c, false), forward_state);
  ProcedureState backward_state;
  run_procedures<ResponseProcedures>(TraceEval(trace, payloads, c, true), backward_state);

  std::vector<std::size_t> fulfilled = forward_state.fulfillments;
  fulfilled.insert(fulfilled.end(), backward_state.fulfillments.begin(),
                   backward_state.fulfillments.end());
  std::sort(fulfilled.begin(), fulfilled.end());
  fulfilled.erase(std::unique(fulfilled.begin(), fulfilled.end()), fulfilled.end());

  state.fulfillments = fulfilled;
  for (std::size_t act : forward_state.violations)
    if (!std::binary_search(fulfilled.begin(), fulfilled.end(), act))
      state.violations.push_back(act);
}

void dispatch(const Trace& trace, const TracePayloads& payloads, const Constraint& c,
              Template tmpl, ProcedureState& state) {
  switch (tmpl) {
    case Template::Response:
    case Template::Precedence: {
      TraceEval ev(trace, payloads, c, tmpl == Template::Precedence);
      run_procedures<ResponseProcedures>(ev, state);
      break;
    }
    case Template::AlternateResponse:
    case Template::AlternatePrecedence: {
      TraceEval ev(trace, payloads, c, tmpl == Template::AlternatePrecedence);
      run_procedures<AlternateProcedures>(ev, state);
      break;
    }
    case Template::ChainResponse:
    case Template::ChainPrecedence: {
      TraceEval ev(trace, payloads, c, tmpl == Template::ChainPrecedence);
      run_procedures<ChainProcedures>(ev, state);
      break;
    }
    case Template::RespondedExistence:
      run_responded_existence(trace, payloads, c, state);
      break;
    default: {
      // Negative template: run the positive counterpart, swap afterwards.
      dispatch(trace, payloads, c, *positive_counterpart(tmpl), state);
      break;
    }
  }
}

}  // namespace

CheckResult invert_negative(CheckResult result) {
  std::swap(result.fulfillments, result.violations);
  return result;
}

CheckResult check_trace_conformance(const Trace& trace, const TracePayloads& payloads,
                                    const Constraint& constraint) {
  ProcedureState state;
  dispatch(trace, payloads, constraint, constraint.tmpl, state);

  CheckResult result;
  result.case_id = trace.case_id;
  result.constraint_id = constraint.id;
  result.fulfillments = std::move(state.fulfillments);
  result.violations = std::move(state.violations);
  std::sort(result.fulfillments.begin(), result.fulfillments.end());
  std::sort(result.violations.begin(), result.violations.end());
  if (is_negative(constraint.tmpl)) result = invert_negative(std::move(result));
  return result;
}

CheckResult check_trace_conformance(const Trace& trace, const Constraint& constraint) {
  return check_trace_conformance(trace, TracePayloads(trace), constraint);
}

std::vector<CheckResult> check_log_conformance(const EventLog& log, const Model& model,
                                               unsigned workers) {
  const std::size_t n_traces = log.traces.size();
  const std::size_t n_constraints = model.constraints.size();
  std::vector<CheckResult> results(n_traces * n_constraints);

  auto process_trace = [&](std::size_t t) {
    TracePayloads payloads(log.traces[t]);
    for (std::size_t c = 0; c < n_constraints; ++c)
      results[t * n_constraints + c] =
          check_trace_conformance(log.traces[t], payloads, model.constraints[c]);
  };

  if (workers <= 1 || n_traces <= 1) {
    for (std::size_t t = 0; t < n_traces; ++t) process_trace(t);
    return results;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next.fetch_add(1); t < n_traces; t = next.fetch_add(1))
      process_trace(t);
  };
  std::vector<std::thread> pool;
  unsigned count = std::min<std::size_t>(workers, n_traces);
  pool.reserve(count);
  for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace mpdc
