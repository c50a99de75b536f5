#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "wtm/parallel.hpp"
#include "wtm/pipeline.hpp"
#include "wtm/synthlog.hpp"

using namespace wtm;

namespace {

struct Prepared {
  AnalysisResult result;
  std::unique_ptr<ResourceIndex> resources;
  std::unique_ptr<DecompositionContext> ctx;
};

// Everything up to decomposition, once per case count.
const Prepared& prepared(std::size_t n_cases) {
  static std::map<std::size_t, std::unique_ptr<Prepared>> cache;
  auto& slot = cache[n_cases];
  if (!slot) {
    synth::InjectionSpec spec;
    spec.causes = synth::CauseFlags::parse("all");
    spec.n_cases = n_cases;
    spec.seed = 99;
    slot = std::make_unique<Prepared>();
    slot->result = analyze(synth::generate(spec).log());
    slot->resources = std::make_unique<ResourceIndex>(slot->result.log());
    slot->ctx = std::make_unique<DecompositionContext>(DecompositionContext{
        slot->result.log(), slot->result.batches, *slot->resources, slot->result.availability});
  }
  return *slot;
}

void BM_DecomposeSerial(benchmark::State& state) {
  const Prepared& p = prepared(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose_all_serial(p.result.transitions, *p.ctx));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.result.log().size()));
}

void BM_DecomposeParallel(benchmark::State& state) {
  const Prepared& p = prepared(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose_all(p.result.transitions, *p.ctx));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.result.log().size()));
  state.counters["threads"] = worker_count();
}

void BM_AnalyzeEndToEnd(benchmark::State& state) {
  synth::InjectionSpec spec;
  spec.causes = synth::CauseFlags::parse("all");
  spec.n_cases = static_cast<std::size_t>(state.range(0));
  const EventLog log = synth::generate(spec).log();
  for (auto _ : state) benchmark::DoNotOptimize(analyze(log));
}

}  // namespace

BENCHMARK(BM_DecomposeSerial)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecomposeParallel)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyzeEndToEnd)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
