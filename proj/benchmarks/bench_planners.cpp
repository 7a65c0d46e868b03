#include <benchmark/benchmark.h>

#include "dmfprep/baseline.hpp"
#include "dmfprep/emdp.hpp"
#include "dmfprep/executor.hpp"
#include "dmfprep/oracle.hpp"
#include "dmfprep/series.hpp"

namespace {

using dmfprep::ConcFactor;

void BM_Mix(benchmark::State& state) {
    const auto a = ConcFactor::make(5, 4);
    const auto b = ConcFactor::make(11, 4);
    for (auto _ : state) benchmark::DoNotOptimize(mix(a, b));
}
BENCHMARK(BM_Mix);

void BM_GreedyFixture(benchmark::State& state) {
    const auto targets = state.range(0) == 1   ? dmfprep::fixture_ts1()
                         : state.range(0) == 2 ? dmfprep::fixture_ts2()
                                               : dmfprep::fixture_ts3();
    for (auto _ : state) {
        dmfprep::EmdpPlanner planner(targets);
        benchmark::DoNotOptimize(planner.run());
    }
}
BENCHMARK(BM_GreedyFixture)->Arg(1)->Arg(2)->Arg(3);

void BM_GreedyCorpus(benchmark::State& state) {
    dmfprep::CorpusOptions opt;
    opt.count = static_cast<int>(state.range(0));
    const auto corpus = dmfprep::random_series_corpus(opt);
    for (auto _ : state) {
        for (const auto& ts : corpus) {
            dmfprep::EmdpPlanner planner(ts);
            benchmark::DoNotOptimize(planner.run());
        }
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(corpus.size()));
}
BENCHMARK(BM_GreedyCorpus)->Arg(10)->Arg(50);

void BM_BitSerial(benchmark::State& state) {
    const auto t = ConcFactor::make(173, 8);
    for (auto _ : state)
        benchmark::DoNotOptimize(dmfprep::two_way_mix_single(t));
}
BENCHMARK(BM_BitSerial);

void BM_NaiveMulti(benchmark::State& state) {
    const auto targets = dmfprep::fixture_ts1();
    for (auto _ : state)
        benchmark::DoNotOptimize(dmfprep::naive_multi(targets));
}
BENCHMARK(BM_NaiveMulti);

void BM_Execute(benchmark::State& state) {
    const auto plan = dmfprep::EmdpPlanner(dmfprep::fixture_ts2()).run();
    for (auto _ : state) benchmark::DoNotOptimize(dmfprep::execute(plan));
}
BENCHMARK(BM_Execute);

void BM_OracleSingle(benchmark::State& state) {
    const auto t = ConcFactor::make(5, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(dmfprep::min_cost_plan({t}));
}
BENCHMARK(BM_OracleSingle)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
