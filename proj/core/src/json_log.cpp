#include "mpdc/json_log.hpp"

#include <json.hpp>

namespace mpdc {
namespace {

using nlohmann::ordered_json;

AttributeValue value_from_json(const ordered_json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_object() && j.size() == 1 && j.contains("$ts") && j["$ts"].is_number_integer())
    return Timestamp{j["$ts"].get<std::int64_t>()};
  throw ParseError("json log: unsupported attribute value at " + path);
}

ordered_json value_to_json(const AttributeValue& v) {
  return std::visit(
      [](const auto& x) -> ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Timestamp>) return ordered_json{{"$ts", x.millis}};
        else return ordered_json(x);
      },
      v);
}

AttributeMap attrs_from_json(const ordered_json& j, const std::string& path) {
  AttributeMap out;
  if (!j.is_object()) throw ParseError("json log: expected object at " + path);
  for (const auto& [key, value] : j.items())
    out[key] = value_from_json(value, path + "." + key);
  return out;
}

}  // namespace

EventLog parse_json_log(const std::string& input, bool sort_on_load,
                        const std::string& source_name) {
  ordered_json root;
  try {
    root = ordered_json::parse(input);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("json log: ") + e.what());
  }

  if (!root.is_object() || !root.contains("traces") || !root["traces"].is_array())
    throw ParseError("json log: expected {\"traces\": [...]} at $");

  EventLog log;
  log.source_name = source_name;
  std::size_t ti = 0;
  for (const auto& jt : root["traces"]) {
    std::string tpath = "$.traces[" + std::to_string(ti++) + "]";
    if (!jt.is_object() || !jt.contains("id") || !jt["id"].is_string())
      throw ParseError("json log: missing string \"id\" at " + tpath);
    Trace trace;
    trace.case_id = jt["id"].get<std::string>();
    if (jt.contains("attrs")) trace.case_attributes = attrs_from_json(jt["attrs"], tpath + ".attrs");
    if (jt.contains("events")) {
      if (!jt["events"].is_array())
        throw ParseError("json log: \"events\" must be an array at " + tpath);
      std::size_t ei = 0;
      for (const auto& je : jt["events"]) {
        std::string epath = tpath + ".events[" + std::to_string(ei) + "]";
        if (!je.is_object() || !je.contains("a") || !je["a"].is_string())
          throw ParseError("json log: missing string \"a\" at " + epath);
        if (!je.contains("t") || !je["t"].is_number_integer())
          throw ParseError("json log: missing integer \"t\" at " + epath);
        Event event;
        event.activity = je["a"].get<std::string>();
        event.timestamp = je["t"].get<std::int64_t>();
        event.index = ei++;
        if (je.contains("attrs")) event.attributes = attrs_from_json(je["attrs"], epath + ".attrs");
        trace.events.push_back(std::move(event));
      }
    }
    log.traces.push_back(std::move(trace));
  }

  if (sort_on_load) sort_traces_by_timestamp(log);
  validate_log(log);
  return log;
}

std::string render_json_log(const EventLog& log) {
  ordered_json root;
  root["traces"] = ordered_json::array();
  for (const auto& trace : log.traces) {
    ordered_json jt;
    jt["id"] = trace.case_id;
    if (!trace.case_attributes.empty()) {
      ordered_json attrs = ordered_json::object();
      for (const auto& [k, v] : trace.case_attributes) attrs[k] = value_to_json(v);
      jt["attrs"] = std::move(attrs);
    }
    jt["events"] = ordered_json::array();
    for (const auto& event : trace.events) {
      ordered_json je;
      je["a"] = event.activity;
      je["t"] = event.timestamp;
      if (!event.attributes.empty()) {
        ordered_json attrs = ordered_json::object();
        for (const auto& [k, v] : event.attributes) attrs[k] = value_to_json(v);
        je["attrs"] = std::move(attrs);
      }
      jt["events"].push_back(std::move(je));
    }
    root["traces"].push_back(std::move(jt));
  }
  return root.dump(2);
}

}  // namespace mpdc
