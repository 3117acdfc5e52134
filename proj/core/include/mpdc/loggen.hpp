#ifndef MPDC_LOGGEN_HPP
#define MPDC_LOGGEN_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mpdc/event_log.hpp"
#include "mpdc/model.hpp"

namespace mpdc {

/// SplitMix64 stream. The algorithm is fully specified, so generated
/// logs are reproducible across platforms and implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by modulo reduction (bias negligible for the
  /// small bounds used here, and deterministic everywhere).
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  std::int64_t in_range(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Per-attribute generator descriptor.
struct AttributeSpec {
  struct IntRange { std::int64_t lo = 0, hi = 100; };
  struct RealRange { double lo = 0.0, hi = 1.0; };
  struct Choice { std::vector<std::string> options; };
  struct Boolean {};

  std::string name;
  std::variant<IntRange, RealRange, Choice, Boolean> kind;
};

struct GenSpec {
  std::size_t traces = 0;
  std::size_t events_per_trace = 0;
  std::vector<std::string> alphabet;
  std::vector<AttributeSpec> attribute_specs;
  std::int64_t gap_min_ms = 1000;   // inter-event gap range, inclusive
  std::int64_t gap_max_ms = 60000;
  std::uint64_t seed = 0;
  std::string name = "generated";
};

/// Deterministic synthetic log: exactly spec.traces x spec.events_per_trace
/// events, strictly increasing timestamps within each trace. Each trace
/// draws from an independent stream keyed by seed ^ trace ordinal, so
/// generation can be parallelized without changing the output.
EventLog generate(const GenSpec& spec);

/// Default spec used by the randomized cross-validation suites: small
/// traces over a 4-letter alphabet with one integer attribute in [0,100].
GenSpec default_random_spec(std::uint64_t seed, std::size_t traces = 20,
                            std::size_t max_events = 15);

/// Benchmark-grid model builders: control-flow-only constraints (no
/// data or time conditions) and multi-perspective constraints (with
/// both), over the generator's default alphabet.
Model make_benchmark_model(std::size_t n_constraints, bool multi_perspective,
                           const std::vector<std::string>& alphabet);

/// Alphabet used by the benchmark grid.
std::vector<std::string> benchmark_alphabet();

/// Generator spec for one benchmark-grid cell: the grid alphabet plus
/// the amount/resource attributes referenced by the multi-perspective
/// models.
GenSpec benchmark_gen_spec(std::size_t traces, std::size_t events_per_trace, std::uint64_t seed);

/// Random constraint over the given alphabet, for property suites.
Constraint random_constraint(SplitMix64& rng, Template tmpl,
                             const std::vector<std::string>& alphabet);

}  // namespace mpdc

#endif
