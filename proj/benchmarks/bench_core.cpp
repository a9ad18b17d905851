#include <benchmark/benchmark.h>

#include "shiftlab/chaos.hpp"
#include "shiftlab/criteria.hpp"
#include "shiftlab/synthesis.hpp"

using namespace shiftlab;

namespace {

HorizonConfig cesaro_config(NumericMode mode, std::int64_t n) {
    HorizonConfig cfg;
    cfg.n_max = n;
    cfg.m_grid = {ExactScalar::pow2(4000)};  // never crossed, so the sweep runs to n_max
    cfg.k_max = 1;
    cfg.l_max = 1;
    cfg.mode = mode;
    return cfg;
}

void BM_CesaroLog(benchmark::State& state) {
    ShiftOperator op(Direction::Backward, WeightSequence::parse("expr:(abs(j)+2)/(abs(j)+1)"), preset("s_Z"));
    HorizonConfig cfg = cesaro_config(NumericMode::Log, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(cesaro_branch(op, 0, 1, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CesaroLog)->Arg(1000)->Arg(10000);

void BM_CesaroExact(benchmark::State& state) {
    ShiftOperator op(Direction::Backward, WeightSequence::parse("expr:(abs(j)+2)/(abs(j)+1)"), preset("s_Z"));
    HorizonConfig cfg = cesaro_config(NumericMode::Exact, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(cesaro_branch(op, 0, 1, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CesaroExact)->Arg(1000)->Arg(10000);

void BM_UniformExpansivity(benchmark::State& state) {
    ShiftOperator op(Direction::Backward, WeightSequence::constant(ExactScalar(2)), preset("lp_Z:2"));
    HorizonConfig cfg;
    cfg.n_max = 2000;
    cfg.window = state.range(0);
    cfg.threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(unif_expansive(op, cfg));
}
BENCHMARK(BM_UniformExpansivity)->Args({200, 1})->Args({1000, 1})->Args({1000, 4})->Unit(benchmark::kMillisecond);

void BM_BuildBlocks(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_blocks(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildBlocks)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_VerifyInequalities(benchmark::State& state) {
    Synthesis syn = build_blocks(4);
    for (auto _ : state) benchmark::DoNotOptimize(verify_inequalities(syn.layout, syn.weights, 4));
}
BENCHMARK(BM_VerifyInequalities)->Unit(benchmark::kMillisecond);

void BM_OrbitSeries(benchmark::State& state) {
    Synthesis syn = build_blocks(4);
    ShiftOperator op = block_operator(syn);
    for (auto _ : state) benchmark::DoNotOptimize(orbit_norm_series(op, -1, OrbitSide::Op, syn.layout.at(4).t));
}
BENCHMARK(BM_OrbitSeries)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
