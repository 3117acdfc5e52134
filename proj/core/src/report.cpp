#include "mpdc/report.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <unordered_map>

#include <json.hpp>

namespace mpdc {
namespace {

using nlohmann::ordered_json;

struct Accumulator {
  std::size_t violations = 0;
  std::size_t fulfillments = 0;
  double sparsity_sum = 0.0;  // over traces
};

// Aggregates counts per constraint id, preserving first-appearance order.
std::vector<ConstraintStats> aggregate(const std::vector<CheckResult>& results,
                                       const EventLog& log,
                                       const std::vector<std::string>* id_order) {
  std::unordered_map<std::string, std::size_t> trace_sizes;
  for (const auto& trace : log.traces) trace_sizes[trace.case_id] = trace.events.size();

  std::vector<std::string> order;
  std::unordered_map<std::string, Accumulator> acc;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& r : results) {
    if (!seen.insert({r.case_id, r.constraint_id}).second)
      throw std::invalid_argument("compute_stats: duplicate result for trace '" + r.case_id +
                                  "', constraint '" + r.constraint_id + "'");
    auto [it, inserted] = acc.try_emplace(r.constraint_id);
    if (inserted) order.push_back(r.constraint_id);
    Accumulator& a = it->second;
    a.violations += r.violations.size();
    a.fulfillments += r.fulfillments.size();
    auto ts = trace_sizes.find(r.case_id);
    std::size_t n_events = ts == trace_sizes.end() ? 0 : ts->second;
    if (n_events > 0) {
      double act = static_cast<double>(r.violations.size() + r.fulfillments.size());
      a.sparsity_sum += 1.0 - act / static_cast<double>(n_events);
    }
  }

  const std::vector<std::string>& ids = id_order ? *id_order : order;
  std::vector<ConstraintStats> stats;
  stats.reserve(ids.size());
  for (const auto& id : ids) {
    ConstraintStats s;
    s.constraint_id = id;
    auto it = acc.find(id);
    if (it != acc.end()) {
      s.violations = it->second.violations;
      s.fulfillments = it->second.fulfillments;
      s.activations = s.violations + s.fulfillments;
      if (s.activations > 0) {
        s.violation_ratio = static_cast<double>(s.violations) / static_cast<double>(s.activations);
        s.fulfillment_ratio = static_cast<double>(s.fulfillments) / static_cast<double>(s.activations);
      }
      if (!log.traces.empty())
        s.avg_activation_sparsity = it->second.sparsity_sum / static_cast<double>(log.traces.size());
    }
    stats.push_back(std::move(s));
  }
  return stats;
}

}  // namespace

std::vector<ConstraintStats> compute_stats(const std::vector<CheckResult>& results,
                                           const EventLog& log) {
  return aggregate(results, log, nullptr);
}

LogReport build_report(const EventLog& log, const Model& model,
                       const std::vector<CheckResult>& results, std::int64_t duration_ms) {
  LogReport report;
  report.model_name = model.name;
  report.log_name = log.source_name;
  report.duration_ms = duration_ms;
  std::vector<std::string> ids;
  for (const auto& c : model.constraints) ids.push_back(c.id);
  report.constraints = aggregate(results, log, &ids);
  report.traces = results;
  return report;
}

std::string format_ratio(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", ratio);
  return buf;
}

std::string render_json(const LogReport& report) {
  ordered_json root;
  root["model"] = report.model_name;
  root["log"] = report.log_name;
  root["duration_ms"] = report.duration_ms;
  root["constraints"] = ordered_json::array();
  for (const auto& s : report.constraints) {
    root["constraints"].push_back(ordered_json{
        {"id", s.constraint_id},
        {"activations", s.activations},
        {"violations", s.violations},
        {"fulfillments", s.fulfillments},
        {"violation_ratio", s.violation_ratio},
        {"fulfillment_ratio", s.fulfillment_ratio},
        {"avg_activation_sparsity", s.avg_activation_sparsity},
    });
  }
  root["traces"] = ordered_json::array();
  for (const auto& r : report.traces) {
    root["traces"].push_back(ordered_json{
        {"case_id", r.case_id},
        {"constraint_id", r.constraint_id},
        {"fulfillments", r.fulfillments},
        {"violations", r.violations},
    });
  }
  return root.dump(2);
}

LogReport parse_json_report(const std::string& input) {
  ordered_json root;
  try {
    root = ordered_json::parse(input);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("json report: ") + e.what());
  }
  LogReport report;
  report.model_name = root.value("model", "");
  report.log_name = root.value("log", "");
  report.duration_ms = root.value("duration_ms", std::int64_t{0});
  for (const auto& jc : root.value("constraints", ordered_json::array())) {
    ConstraintStats s;
    s.constraint_id = jc.at("id").get<std::string>();
    s.activations = jc.at("activations").get<std::size_t>();
    s.violations = jc.at("violations").get<std::size_t>();
    s.fulfillments = jc.at("fulfillments").get<std::size_t>();
    s.violation_ratio = jc.at("violation_ratio").get<double>();
    s.fulfillment_ratio = jc.at("fulfillment_ratio").get<double>();
    s.avg_activation_sparsity = jc.at("avg_activation_sparsity").get<double>();
    report.constraints.push_back(std::move(s));
  }
  for (const auto& jt : root.value("traces", ordered_json::array())) {
    CheckResult r;
    r.case_id = jt.at("case_id").get<std::string>();
    r.constraint_id = jt.at("constraint_id").get<std::string>();
    r.fulfillments = jt.at("fulfillments").get<std::vector<std::size_t>>();
    r.violations = jt.at("violations").get<std::vector<std::size_t>>();
    report.traces.push_back(std::move(r));
  }
  return report;
}

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace

std::string render_csv(const LogReport& report) {
  std::string out =
      "id,activations,violations,fulfillments,violation_ratio,fulfillment_ratio,"
      "avg_activation_sparsity\r\n";
  for (const auto& s : report.constraints) {
    out += csv_escape(s.constraint_id);
    out += ',' + std::to_string(s.activations);
    out += ',' + std::to_string(s.violations);
    out += ',' + std::to_string(s.fulfillments);
    out += ',' + format_ratio(s.violation_ratio);
    out += ',' + format_ratio(s.fulfillment_ratio);
    out += ',' + format_ratio(s.avg_activation_sparsity);
    out += "\r\n";
  }
  return out;
}

}  // namespace mpdc
