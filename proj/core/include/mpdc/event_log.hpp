#ifndef MPDC_EVENT_LOG_HPP
#define MPDC_EVENT_LOG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mpdc {

/// Attribute payload value. Exactly one of five kinds: text, integer,
/// real, boolean, or timestamp (epoch milliseconds).
struct Timestamp {
  std::int64_t millis = 0;
  friend bool operator==(const Timestamp&, const Timestamp&) = default;
  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

using AttributeValue =
    std::variant<std::string, std::int64_t, double, bool, Timestamp>;

using AttributeMap = std::map<std::string, AttributeValue>;

struct Event {
  std::string activity;       // non-empty activity key
  std::int64_t timestamp = 0; // epoch milliseconds
  AttributeMap attributes;    // raw event attributes (writes)
  std::size_t index = 0;      // position within the containing trace

  friend bool operator==(const Event&, const Event&) = default;
};

struct Trace {
  std::string case_id;
  AttributeMap case_attributes;
  std::vector<Event> events;

  friend bool operator==(const Trace&, const Trace&) = default;
};

struct EventLog {
  std::vector<Trace> traces;
  std::string source_name;

  std::size_t total_events() const {
    std::size_t n = 0;
    for (const auto& t : traces) n += t.events.size();
    return n;
  }

  friend bool operator==(const EventLog&, const EventLog&) = default;
};

/// Effective attribute valuation visible at one event: case attributes
/// merged with the latest write of each event attribute at positions <= i.
/// Event writes shadow case attributes of the same name.
struct PayloadSnapshot {
  AttributeMap values;

  const AttributeValue* find(const std::string& name) const {
    auto it = values.find(name);
    return it == values.end() ? nullptr : &it->second;
  }

  friend bool operator==(const PayloadSnapshot&, const PayloadSnapshot&) = default;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by parsers on malformed input. Carries a 1-based line and
/// 0-based column when known (0 lines means unknown position).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(format(msg, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& msg, std::size_t line, std::size_t col) {
    if (line == 0) return msg;
    return msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")";
  }
  std::size_t line_;
  std::size_t column_;
};

PayloadSnapshot payload_at(const Trace& trace, std::size_t index);

/// Precomputed snapshots for every position of a trace. Shared by all
/// constraints checked against the same trace.
class TracePayloads {
 public:
  explicit TracePayloads(const Trace& trace);

  const PayloadSnapshot& at(std::size_t index) const { return snapshots_[index]; }
  std::size_t size() const { return snapshots_.size(); }

 private:
  std::vector<PayloadSnapshot> snapshots_;
};

/// Checks trace invariants: non-empty activities, index consistency,
/// monotone timestamps, distinct case ids. Throws ValidationError.
void validate_log(const EventLog& log);

/// Stably sorts the events of each trace by timestamp.
void sort_traces_by_timestamp(EventLog& log);

std::string to_display_string(const AttributeValue& v);

}  // namespace mpdc

#endif
