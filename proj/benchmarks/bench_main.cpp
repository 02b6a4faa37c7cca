#include <benchmark/benchmark.h>

#include "linkmos/evaluate.hpp"

namespace {

void bm_queue_steady_state(benchmark::State& state) {
    linkmos::QueueConfig q{90.0, 100.0, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        linkmos::QueueMetrics m = linkmos::queue_steady_state(q);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(bm_queue_steady_state)->Arg(10)->Arg(64);

void bm_evaluate(benchmark::State& state) {
    linkmos::Scenario sc = linkmos::preset_scenario("voice_call");
    for (auto _ : state) {
        linkmos::EvaluationReport r = linkmos::evaluate(sc);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(bm_evaluate);

void bm_sweep(benchmark::State& state) {
    // stay above ~3 dB: below that the video preset's offered load exceeds
    // the service rate and evaluate() rejects the operating point
    linkmos::Scenario sc = linkmos::preset_scenario("video_call");
    for (auto _ : state) {
        auto rows = linkmos::sweep(sc, 5.0, 20.0, 0.5);
        benchmark::DoNotOptimize(rows);
    }
}
BENCHMARK(bm_sweep);

void bm_simulate_mm1k(benchmark::State& state) {
    linkmos::QueueConfig q{90.0, 100.0, 10};
    linkmos::SimConfig sim{1, static_cast<std::uint64_t>(state.range(0)), 0.1};
    for (auto _ : state) {
        linkmos::SimReport r = linkmos::simulate_mm1k(q, 0.3, sim);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(bm_simulate_mm1k)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
