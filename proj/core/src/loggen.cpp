#include "mpdc/loggen.hpp"

#include <stdexcept>

namespace mpdc {
namespace {

constexpr std::int64_t kBaseEpochMs = 1577836800000;  // 2020-01-01T00:00:00Z

AttributeValue draw_attribute(SplitMix64& rng, const AttributeSpec& spec) {
  return std::visit(
      [&](const auto& k) -> AttributeValue {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, AttributeSpec::IntRange>) {
          return rng.in_range(k.lo, k.hi);
        } else if constexpr (std::is_same_v<T, AttributeSpec::RealRange>) {
          return k.lo + rng.unit() * (k.hi - k.lo);
        } else if constexpr (std::is_same_v<T, AttributeSpec::Choice>) {
          return k.options[rng.below(k.options.size())];
        } else {
          return rng.next() & 1 ? true : false;
        }
      },
      spec.kind);
}

Trace generate_trace(const GenSpec& spec, std::size_t ordinal, std::size_t n_events) {
  SplitMix64 rng(spec.seed ^ static_cast<std::uint64_t>(ordinal));
  Trace trace;
  trace.case_id = "case_" + std::to_string(ordinal + 1);
  std::int64_t ts = kBaseEpochMs + rng.in_range(0, 30LL * 86'400'000);
  for (std::size_t i = 0; i < n_events; ++i) {
    Event event;
    event.activity = spec.alphabet[rng.below(spec.alphabet.size())];
    event.timestamp = ts;
    event.index = i;
    for (const auto& attr : spec.attribute_specs)
      event.attributes[attr.name] = draw_attribute(rng, attr);
    trace.events.push_back(std::move(event));
    ts += std::max<std::int64_t>(1, rng.in_range(spec.gap_min_ms, spec.gap_max_ms));
  }
  return trace;
}

void check_spec(const GenSpec& spec) {
  if (spec.events_per_trace > 0 && spec.traces > 0 && spec.alphabet.empty())
    throw std::invalid_argument("loggen: empty alphabet with events requested");
  if (spec.gap_min_ms < 0 || spec.gap_max_ms < spec.gap_min_ms)
    throw std::invalid_argument("loggen: invalid inter-event gap range");
  for (const auto& attr : spec.attribute_specs)
    if (const auto* c = std::get_if<AttributeSpec::Choice>(&attr.kind); c && c->options.empty())
      throw std::invalid_argument("loggen: choice attribute '" + attr.name + "' has no options");
}

}  // namespace

EventLog generate(const GenSpec& spec) {
  check_spec(spec);
  EventLog log;
  log.source_name = spec.name;
  log.traces.reserve(spec.traces);
  for (std::size_t t = 0; t < spec.traces; ++t)
    log.traces.push_back(generate_trace(spec, t, spec.events_per_trace));
  return log;
}

GenSpec default_random_spec(std::uint64_t seed, std::size_t traces, std::size_t max_events) {
  GenSpec spec;
  spec.traces = traces;
  spec.events_per_trace = max_events;
  spec.alphabet = {"a", "b", "c", "d"};
  spec.attribute_specs = {{"x", AttributeSpec::IntRange{0, 100}}};
  spec.gap_min_ms = 1;
  spec.gap_max_ms = 7'200'000;  // up to 2 h between events
  spec.seed = seed;
  spec.name = "random_" + std::to_string(seed);
  return spec;
}

std::vector<std::string> benchmark_alphabet() {
  std::vector<std::string> out;
  for (int i = 0; i < 10; ++i) out.push_back("act_" + std::to_string(i));
  return out;
}

GenSpec benchmark_gen_spec(std::size_t traces, std::size_t events_per_trace, std::uint64_t seed) {
  GenSpec spec;
  spec.traces = traces;
  spec.events_per_trace = events_per_trace;
  spec.alphabet = benchmark_alphabet();
  spec.attribute_specs = {
      {"amount", AttributeSpec::IntRange{0, 100}},
      {"resource", AttributeSpec::Choice{{"alice", "bob", "carol", "dave", "erin"}}},
  };
  spec.gap_min_ms = 60'000;
  spec.gap_max_ms = 7'200'000;
  spec.seed = seed;
  spec.name = "bench_" + std::to_string(traces) + "x" + std::to_string(events_per_trace);
  return spec;
}

Model make_benchmark_model(std::size_t n_constraints, bool multi_perspective,
                           const std::vector<std::string>& alphabet) {
  if (alphabet.size() < 2) throw std::invalid_argument("benchmark model needs >= 2 activities");
  Model model;
  model.name = (multi_perspective ? "mp_" : "cf_") + std::to_string(n_constraints);
  constexpr std::size_t n_templates = std::size(kAllTemplates);
  for (std::size_t i = 0; i < n_constraints; ++i) {
    Constraint c;
    c.id = std::to_string(i + 1);
    c.tmpl = kAllTemplates[i % n_templates];
    c.activations = {alphabet[i % alphabet.size()]};
    c.targets = {alphabet[(i + 1 + i / alphabet.size()) % alphabet.size()]};
    if (multi_perspective) {
      c.activation_condition =
          parse_condition("A.amount >= " + std::to_string(20 + (i * 7) % 60), SidePolicy::Activation);
      c.correlation_condition =
          parse_condition("A.resource == T.resource", SidePolicy::Correlation);
      c.time_condition = parse_time_window("0,24,h");
    } else {
      c.activation_condition = parse_condition("-", SidePolicy::Activation);
      c.correlation_condition = parse_condition("-", SidePolicy::Correlation);
      c.time_condition = parse_time_window("-");
    }
    model.constraints.push_back(std::move(c));
  }
  return model;
}

Constraint random_constraint(SplitMix64& rng, Template tmpl,
                             const std::vector<std::string>& alphabet) {
  Constraint c;
  c.id = template_name(tmpl);
  c.tmpl = tmpl;
  c.activations = {alphabet[rng.below(alphabet.size())]};
  c.targets = {alphabet[rng.below(alphabet.size())]};

  std::string act_cond;
  switch (rng.below(4)) {
    case 0: act_cond = "-"; break;
    case 1: act_cond = "A.x >= " + std::to_string(rng.below(101)); break;
    case 2: act_cond = "A.x < " + std::to_string(rng.below(101)); break;
    default: act_cond = "not A.x >= " + std::to_string(rng.below(101)); break;
  }
  std::string corr_cond;
  switch (rng.below(4)) {
    case 0: corr_cond = "-"; break;
    case 1: corr_cond = "A.x <= T.x"; break;
    case 2: corr_cond = "A.x > T.x"; break;
    default: corr_cond = "A.x != T.x"; break;
  }
  std::string window;
  switch (rng.below(4)) {
    case 0: window = "-"; break;
    case 1: window = "0,30,m"; break;
    case 2: window = "0,2,h"; break;
    default: window = "10,90,m"; break;
  }
  c.activation_condition = parse_condition(act_cond, SidePolicy::Activation);
  c.correlation_condition = parse_condition(corr_cond, SidePolicy::Correlation);
  c.time_condition = parse_time_window(window);
  return c;
}

}  // namespace mpdc
