#include <benchmark/benchmark.h>

#include "biphoton/joint_state.hpp"
#include "biphoton/measurement.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/sweep.hpp"

using namespace biphoton;

namespace {

ExperimentConfig config(int n) {
    ExperimentConfig c;
    c.pm_kind = PmKind::sinc;
    c.grid_points = n;
    return c;
}

void BM_BuildJsa(benchmark::State& state) {
    const ExperimentConfig c = config(static_cast<int>(state.range(0)));
    const GridPair grids = make_state_grids(c);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_jsa(c, grids));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildJsa)->RangeMultiplier(2)->Range(128, 512)->Complexity();

void BM_ToTemporal(benchmark::State& state) {
    const ExperimentConfig c = config(static_cast<int>(state.range(0)));
    const JointAmplitude jsa = build_jsa(c, make_state_grids(c));
    for (auto _ : state) {
        benchmark::DoNotOptimize(to_temporal(jsa));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ToTemporal)->RangeMultiplier(2)->Range(128, 512)->Complexity();

void BM_SchmidtDecompose(benchmark::State& state) {
    const ExperimentConfig c = config(static_cast<int>(state.range(0)));
    const JointAmplitude jsa = build_jsa(c, make_state_grids(c));
    for (auto _ : state) {
        benchmark::DoNotOptimize(schmidt_decompose(jsa));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SchmidtDecompose)->RangeMultiplier(2)->Range(128, 512)->Complexity();

void BM_JtdScan(benchmark::State& state) {
    const ExperimentConfig c = config(256);
    const GridPair grids = make_grids(c);
    const JointDensity d = density(to_temporal(build_jsa(c, grids)));
    const GateProfile gate = gate_profile(c, grids.temporal);
    for (auto _ : state) {
        benchmark::DoNotOptimize(jtd_scan(d, gate, c));
    }
}
BENCHMARK(BM_JtdScan);

void BM_EntropyPoint(benchmark::State& state) {
    const ExperimentConfig c = config(256);
    for (auto _ : state) {
        benchmark::DoNotOptimize(entropy_at_bandwidth(2.2, PmKind::sinc, c));
    }
}
BENCHMARK(BM_EntropyPoint);

}  // namespace

BENCHMARK_MAIN();
