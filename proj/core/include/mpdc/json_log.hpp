#ifndef MPDC_JSON_LOG_HPP
#define MPDC_JSON_LOG_HPP

#include <string>

#include "mpdc/event_log.hpp"

namespace mpdc {

/// Compact JSON log fixture format:
///   {"traces":[{"id":string,"attrs":{...},
///               "events":[{"a":string,"t":integer_ms,"attrs":{...}}]}]}
/// Attribute values map as JSON string/integer/double/bool; timestamps
/// are encoded as {"$ts": integer_ms}.
EventLog parse_json_log(const std::string& input, bool sort_on_load = false,
                        const std::string& source_name = "");

std::string render_json_log(const EventLog& log);

}  // namespace mpdc

#endif
