#include "mpdc/event_log.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace mpdc {

PayloadSnapshot payload_at(const Trace& trace, std::size_t index) {
  if (index >= trace.events.size())
    throw std::out_of_range("payload_at: index " + std::to_string(index) +
                            " out of range for trace '" + trace.case_id + "'");
  PayloadSnapshot snap{trace.case_attributes};
  for (std::size_t i = 0; i <= index; ++i)
    for (const auto& [name, value] : trace.events[i].attributes)
      snap.values[name] = value;
  return snap;
}

TracePayloads::TracePayloads(const Trace& trace) {
  snapshots_.reserve(trace.events.size());
  AttributeMap current = trace.case_attributes;
  for (const auto& event : trace.events) {
    for (const auto& [name, value] : event.attributes) current[name] = value;
    snapshots_.push_back(PayloadSnapshot{current});
  }
}

void validate_log(const EventLog& log) {
  std::unordered_set<std::string> seen_ids;
  for (const auto& trace : log.traces) {
    if (!seen_ids.insert(trace.case_id).second)
      throw ValidationError("duplicate case id '" + trace.case_id + "'");
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
      const Event& e = trace.events[i];
      if (e.activity.empty())
        throw ValidationError("trace '" + trace.case_id + "': event " +
                              std::to_string(i) + " has an empty activity");
      if (e.index != i)
        throw ValidationError("trace '" + trace.case_id + "': event " +
                              std::to_string(i) + " carries index " +
                              std::to_string(e.index));
      if (i > 0 && e.timestamp < trace.events[i - 1].timestamp)
        throw ValidationError("trace '" + trace.case_id +
                              "': non-monotonic timestamp at event " +
                              std::to_string(i));
    }
  }
}

void sort_traces_by_timestamp(EventLog& log) {
  for (auto& trace : log.traces) {
    std::stable_sort(trace.events.begin(), trace.events.end(),
                     [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });
    for (std::size_t i = 0; i < trace.events.size(); ++i) trace.events[i].index = i;
  }
}

std::string to_display_string(const AttributeValue& v) {
  std::ostringstream os;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) os << x;
        else if constexpr (std::is_same_v<T, bool>) os << (x ? "true" : "false");
        else if constexpr (std::is_same_v<T, Timestamp>) os << x.millis;
        else os << x;
      },
      v);
  return os.str();
}

}  // namespace mpdc
