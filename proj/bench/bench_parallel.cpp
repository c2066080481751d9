#include "conelab/conemap.hpp"
#include "conelab/constructions.hpp"
#include "conelab/suites.hpp"

#include <benchmark/benchmark.h>

using namespace conelab;

namespace {

Execution exec_of(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_Facets(benchmark::State& state) {
    auto rays = limit_cone_k0(14, 7).rays();
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_facets(rays, Tolerance{}, exec_of(state)));
}
BENCHMARK(BM_Facets)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

void BM_BuildCone(benchmark::State& state) {
    auto rays = limit_cone_k0(12, 8).rays();
    for (auto _ : state) benchmark::DoNotOptimize(build_cone(rays, Tolerance{}, exec_of(state)));
}
BENCHMARK(BM_BuildCone)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

void BM_LocalExponents(benchmark::State& state) {
    ConeMap map = highdim(8, 7).map;
    for (auto _ : state) benchmark::DoNotOptimize(exponent_report(map, exec_of(state)));
}
BENCHMARK(BM_LocalExponents)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
    SweepOptions opt;
    opt.m_range = {6, 7, 8};
    opt.jobs = state.range(0) ? 0 : 1;
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep("highdim", opt));
}
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
