#ifndef MPDC_XES_HPP
#define MPDC_XES_HPP

#include <iosfwd>
#include <string>

#include "mpdc/event_log.hpp"

namespace mpdc {

struct XesOptions {
  /// Stably sort events by timestamp instead of rejecting non-monotonic
  /// traces.
  bool sort_on_load = false;
  std::string source_name;
};

/// Parses the XES subset: log/trace/event elements with string, int,
/// float, boolean and date attribute elements. concept:name becomes the
/// activity key, suffixed with "-" + lifecycle:transition when the
/// transition is present and not "complete". date values are ISO-8601
/// with timezone, stored as epoch milliseconds.
EventLog parse_xes(std::istream& input, const XesOptions& options = {});
EventLog parse_xes(const std::string& input, const XesOptions& options = {});

/// Emits the same XES subset accepted by parse_xes; round-trips
/// structurally.
void write_xes(const EventLog& log, std::ostream& output);
std::string write_xes(const EventLog& log);

/// ISO-8601 with timezone offset -> epoch milliseconds.
std::int64_t parse_iso8601(const std::string& text);
std::string format_iso8601(std::int64_t epoch_millis);

}  // namespace mpdc

#endif
