// Command-line front end: conformance checking, synthetic log
// generation, the scaling benchmark grid, and engine/oracle
// cross-validation.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mpdc/engine.hpp"
#include "mpdc/json_log.hpp"
#include "mpdc/loggen.hpp"
#include "mpdc/model.hpp"
#include "mpdc/oracle.hpp"
#include "mpdc/report.hpp"
#include "mpdc/xes.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInputError = 2;

unsigned default_workers() {
  if (const char* env = std::getenv("MPDC_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

mpdc::EventLog load_log(const std::string& path, bool sort_on_load) {
  std::string content = read_file(path);
  if (has_suffix(path, ".json"))
    return mpdc::parse_json_log(content, sort_on_load, path);
  mpdc::XesOptions opts;
  opts.sort_on_load = sort_on_load;
  opts.source_name = path;
  return mpdc::parse_xes(content, opts);
}

mpdc::Model load_model(const std::string& path) {
  return mpdc::parse_model(read_file(path), path);
}

void print_summary(const mpdc::LogReport& report) {
  std::cout << std::left << std::setw(6) << "id" << std::right << std::setw(12) << "activations"
            << std::setw(12) << "violations" << std::setw(13) << "fulfillments" << std::setw(12)
            << "viol.ratio" << std::setw(14) << "fulfill.ratio" << '\n';
  for (const auto& s : report.constraints) {
    std::cout << std::left << std::setw(6) << s.constraint_id << std::right << std::setw(12)
              << s.activations << std::setw(12) << s.violations << std::setw(13) << s.fulfillments
              << std::setw(12) << mpdc::format_ratio(s.violation_ratio) << std::setw(14)
              << mpdc::format_ratio(s.fulfillment_ratio) << '\n';
  }
}

struct CheckOptions {
  std::string log_path;
  std::string model_path;
  std::string out_path;
  std::string format = "json";
  unsigned workers = default_workers();
  bool sort_on_load = false;
  bool fail_on_violation = false;
};

int run_check(const CheckOptions& opt) {
  mpdc::EventLog log;
  mpdc::Model model;
  try {
    log = load_log(opt.log_path, opt.sort_on_load);
    model = load_model(opt.model_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  for (const auto& warning : mpdc::validate_model(model, log))
    std::cerr << "warning: " << warning << '\n';

  auto start = std::chrono::steady_clock::now();
  auto results = mpdc::check_log_conformance(log, model, opt.workers);
  auto duration = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  auto report = mpdc::build_report(log, model, results, duration.count());
  print_summary(report);
  std::cout << "checked " << log.traces.size() << " traces x " << model.constraints.size()
            << " constraints in " << duration.count() << " ms\n";

  if (!opt.out_path.empty()) {
    try {
      write_file(opt.out_path,
                 opt.format == "csv" ? mpdc::render_csv(report) : mpdc::render_json(report));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitInputError;
    }
  }

  if (opt.fail_on_violation)
    for (const auto& s : report.constraints)
      if (s.violations > 0) return kExitViolation;
  return kExitOk;
}

struct GenOptions {
  std::size_t traces = 1000;
  std::size_t events = 10;
  std::uint64_t seed = 1;
  std::string out_path;
};

int run_gen(const GenOptions& opt) {
  try {
    auto log = mpdc::generate(mpdc::benchmark_gen_spec(opt.traces, opt.events, opt.seed));
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + opt.out_path + "'");
    mpdc::write_xes(log, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}

struct BenchOptions {
  std::string grid = "default";
  std::string out_path;
  unsigned reps = 5;
  unsigned workers = default_workers();
  std::uint64_t seed = 42;
};

int run_bench(const BenchOptions& opt) {
  std::vector<std::size_t> trace_counts;
  std::vector<std::size_t> event_counts;
  std::vector<std::size_t> model_sizes;
  if (opt.grid == "default") {
    trace_counts = {25'000, 50'000, 75'000, 100'000};
    event_counts = {10, 20, 30, 40, 50};
    model_sizes = {10, 20, 30, 40, 50};
  } else if (opt.grid == "small") {
    trace_counts = {1'000, 2'000};
    event_counts = {10, 20};
    model_sizes = {10};
  } else {
    std::cerr << "error: unknown grid '" << opt.grid << "'\n";
    return kExitInputError;
  }

  std::ostringstream csv;
  csv << "traces,events_per_trace,total_events,constraints,model_kind,mean_ms,stdev_ms\n";
  for (std::size_t traces : trace_counts) {
    for (std::size_t events : event_counts) {
      auto log = mpdc::generate(mpdc::benchmark_gen_spec(traces, events, opt.seed));
      for (std::size_t n_constraints : model_sizes) {
        for (bool mp : {false, true}) {
          auto model = mpdc::make_benchmark_model(n_constraints, mp, mpdc::benchmark_alphabet());
          std::vector<double> times;
          for (unsigned rep = 0; rep < opt.reps; ++rep) {
            auto start = std::chrono::steady_clock::now();
            auto results = mpdc::check_log_conformance(log, model, opt.workers);
            auto elapsed = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
            times.push_back(elapsed);
            (void)results;
          }
          double mean = 0;
          for (double t : times) mean += t;
          mean /= times.size();
          double var = 0;
          for (double t : times) var += (t - mean) * (t - mean);
          double stdev = times.size() > 1 ? std::sqrt(var / (times.size() - 1)) : 0.0;
          csv << traces << ',' << events << ',' << traces * events << ',' << n_constraints << ','
              << (mp ? "multi_perspective" : "control_flow") << ',' << std::fixed
              << std::setprecision(2) << mean << ',' << stdev << '\n';
          std::cout << traces << " traces x " << events << " events, " << n_constraints << " "
                    << (mp ? "mp" : "cf") << " constraints: " << std::fixed << std::setprecision(1)
                    << mean << " ms (stdev " << stdev << ")\n";
        }
      }
    }
  }
  if (!opt.out_path.empty()) {
    try {
      write_file(opt.out_path, csv.str());
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitInputError;
    }
  }
  return kExitOk;
}

struct OracleCheckOptions {
  std::string log_path;
  std::string model_path;
  bool random = false;
  std::size_t cases = 100;
  std::uint64_t seed = 1;
};

// Prints a minimal reproduction: the trace as a JSON log plus the
// constraint line.
void dump_disagreement(const mpdc::Trace& trace, const mpdc::Constraint& constraint,
                       const mpdc::CheckResult& engine, const mpdc::CheckResult& oracle) {
  std::cerr << "disagreement on trace '" << trace.case_id << "', constraint "
            << constraint.id << " (" << mpdc::template_name(constraint.tmpl) << ")\n";
  auto render_set = [](const std::vector<std::size_t>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + "}";
  };
  std::cerr << "  engine: fulfillments " << render_set(engine.fulfillments) << ", violations "
            << render_set(engine.violations) << '\n';
  std::cerr << "  oracle: fulfillments " << render_set(oracle.fulfillments) << ", violations "
            << render_set(oracle.violations) << '\n';
  mpdc::EventLog repro;
  repro.traces.push_back(trace);
  std::cerr << "  repro log:\n" << mpdc::render_json_log(repro) << '\n';
  mpdc::Model repro_model;
  repro_model.constraints.push_back(constraint);
  std::cerr << "  repro model:\n" << mpdc::render_model(repro_model);
}

int cross_validate(const mpdc::EventLog& log, const mpdc::Model& model) {
  std::size_t mismatches = 0;
  for (const auto& trace : log.traces) {
    mpdc::TracePayloads payloads(trace);
    for (const auto& constraint : model.constraints) {
      auto engine = mpdc::check_trace_conformance(trace, payloads, constraint);
      auto oracle = mpdc::oracle_classify(trace, constraint);
      if (engine.fulfillments != oracle.fulfillments || engine.violations != oracle.violations) {
        dump_disagreement(trace, constraint, engine, oracle);
        ++mismatches;
      }
    }
  }
  if (mismatches > 0) {
    std::cerr << mismatches << " disagreement(s)\n";
    return kExitViolation;
  }
  return kExitOk;
}

int run_oracle_check(const OracleCheckOptions& opt) {
  try {
    if (opt.random) {
      for (std::size_t i = 0; i < opt.cases; ++i) {
        std::uint64_t seed = opt.seed + i;
        auto spec = mpdc::default_random_spec(seed);
        spec.events_per_trace = 1 + seed % 15;
        auto log = mpdc::generate(spec);
        mpdc::SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
        mpdc::Model model;
        for (mpdc::Template tmpl : mpdc::kAllTemplates) {
          auto c = mpdc::random_constraint(rng, tmpl, spec.alphabet);
          c.id = std::to_string(model.constraints.size() + 1);
          model.constraints.push_back(std::move(c));
        }
        if (int rc = cross_validate(log, model); rc != kExitOk) return rc;
      }
      std::cout << "oracle-check: " << opt.cases << " random cases, no disagreement\n";
      return kExitOk;
    }
    auto log = load_log(opt.log_path, false);
    auto model = load_model(opt.model_path);
    int rc = cross_validate(log, model);
    if (rc == kExitOk) std::cout << "oracle-check: no disagreement\n";
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-perspective declarative conformance checker"};
  app.require_subcommand(1);

  CheckOptions check_opt;
  auto* check = app.add_subcommand("check", "Check a log against a model");
  check->add_option("--log", check_opt.log_path, "event log (.xes or .json)")->required();
  check->add_option("--model", check_opt.model_path, "constraint model (.mpdecl)")->required();
  check->add_option("--out", check_opt.out_path, "report output path");
  check->add_option("--format", check_opt.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  check->add_option("--workers", check_opt.workers, "worker thread count");
  check->add_flag("--sort-on-load", check_opt.sort_on_load, "sort events by timestamp on load");
  check->add_flag("--fail-on-violation", check_opt.fail_on_violation,
                  "exit 1 if any violation exists");

  GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic XES log");
  gen->add_option("--traces", gen_opt.traces, "number of traces");
  gen->add_option("--events", gen_opt.events, "events per trace");
  gen->add_option("--seed", gen_opt.seed, "generator seed");
  gen->add_option("--out", gen_opt.out_path, "output path")->required();

  BenchOptions bench_opt;
  auto* bench = app.add_subcommand("bench", "Run the scaling benchmark grid");
  bench->add_option("--grid", bench_opt.grid, "grid name: default or small");
  bench->add_option("--out", bench_opt.out_path, "timing CSV output path");
  bench->add_option("--reps", bench_opt.reps, "repetitions per cell");
  bench->add_option("--workers", bench_opt.workers, "worker thread count");
  bench->add_option("--seed", bench_opt.seed, "generator seed");

  OracleCheckOptions oracle_opt;
  auto* oracle = app.add_subcommand("oracle-check", "Cross-validate engine against the oracle");
  oracle->add_option("--log", oracle_opt.log_path, "event log (.xes or .json)");
  oracle->add_option("--model", oracle_opt.model_path, "constraint model");
  oracle->add_flag("--random", oracle_opt.random, "use seeded random logs and constraints");
  oracle->add_option("--cases", oracle_opt.cases, "number of random cases");
  oracle->add_option("--seed", oracle_opt.seed, "base seed for random cases");

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return run_check(check_opt);
  if (gen->parsed()) return run_gen(gen_opt);
  if (bench->parsed()) return run_bench(bench_opt);
  if (oracle->parsed()) return run_oracle_check(oracle_opt);
  return kExitInputError;
}
