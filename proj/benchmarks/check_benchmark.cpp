// Microbenchmarks for the hot paths: per-trace checking, whole-log
// checking over the grid generator, condition evaluation, and XES
// parsing. The `bench` CLI subcommand covers the full scaling grid;
// these are for quick before/after comparisons while optimizing.

#include <benchmark/benchmark.h>

#include "mpdc/engine.hpp"
#include "mpdc/loggen.hpp"
#include "mpdc/oracle.hpp"
#include "mpdc/xes.hpp"

using namespace mpdc;

namespace {

EventLog grid_log(std::size_t traces, std::size_t events) {
  return generate(benchmark_gen_spec(traces, events, 42));
}

void BM_CheckTrace(benchmark::State& state) {
  EventLog log = grid_log(1, static_cast<std::size_t>(state.range(0)));
  Model model = make_benchmark_model(1, true, benchmark_alphabet());
  TracePayloads payloads(log.traces[0]);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        check_trace_conformance(log.traces[0], payloads, model.constraints[0]));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CheckTrace)->Arg(10)->Arg(50)->Arg(200);

void BM_CheckLog(benchmark::State& state) {
  EventLog log = grid_log(static_cast<std::size_t>(state.range(0)), 20);
  Model model = make_benchmark_model(10, state.range(1) != 0, benchmark_alphabet());
  for (auto _ : state) benchmark::DoNotOptimize(check_log_conformance(log, model));
  state.SetItemsProcessed(state.iterations() * log.total_events());
}
BENCHMARK(BM_CheckLog)
    ->Args({1000, 0})
    ->Args({1000, 1})
    ->Args({4000, 0})
    ->Args({4000, 1});

void BM_OracleClassify(benchmark::State& state) {
  EventLog log = grid_log(1, static_cast<std::size_t>(state.range(0)));
  Model model = make_benchmark_model(1, true, benchmark_alphabet());
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle_classify(log.traces[0], model.constraints[0]));
}
BENCHMARK(BM_OracleClassify)->Arg(10)->Arg(50);

void BM_ConditionEval(benchmark::State& state) {
  auto cond = parse_condition("A.amount >= 20 and (A.resource == 'alice' or A.amount < 80)",
                              SidePolicy::Activation);
  PayloadSnapshot payload{{{"amount", std::int64_t{42}}, {"resource", std::string("bob")}}};
  for (auto _ : state) benchmark::DoNotOptimize(verify_activation(*cond, payload));
}
BENCHMARK(BM_ConditionEval);

void BM_ParseXes(benchmark::State& state) {
  std::string xes = write_xes(grid_log(static_cast<std::size_t>(state.range(0)), 10));
  for (auto _ : state) benchmark::DoNotOptimize(parse_xes(xes));
  state.SetBytesProcessed(state.iterations() * xes.size());
}
BENCHMARK(BM_ParseXes)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
