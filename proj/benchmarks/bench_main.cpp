// Microbenchmarks for the hot paths: assignment solving, the two reduction
// algorithms, and one full Monte Carlo realization per method.

#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "dratta/assignment.hpp"
#include "dratta/assoc_reduction.hpp"
#include "dratta/gevo.hpp"
#include "dratta/rng.hpp"
#include "dratta/simulation.hpp"

namespace {

using namespace dratta;

Eigen::MatrixXd random_cost_matrix(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Eigen::MatrixXd costs(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) costs(i, j) = rng.uniform01();
    return costs;
}

Eigen::MatrixXd random_spd(int n, SplitMix64& rng) {
    Eigen::MatrixXd w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = rng.normal();
    Eigen::MatrixXd s = w * w.transpose() / n;
    s += 0.5 * Eigen::MatrixXd::Identity(n, n);
    return s;
}

void bm_solve_lap(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const AssignmentMatrix costs(random_cost_matrix(n, 0x1a), MatrixKind::Full);
    for (auto _ : state) {
        Assignment a = solve_lap(costs);
        benchmark::DoNotOptimize(a.cost);
    }
}
BENCHMARK(bm_solve_lap)->Arg(4)->Arg(10)->Arg(20);

void bm_fusion_optimal_reduction(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SplitMix64 rng(0xf00d);
    const Eigen::MatrixXd r1 = random_spd(n, rng);
    const Eigen::MatrixXd r2 = random_spd(n, rng);
    for (auto _ : state) {
        ReductionMap map = fusion_optimal_reduction(r1, r2, 1);
        benchmark::DoNotOptimize(map.psi());
    }
}
BENCHMARK(bm_fusion_optimal_reduction)->Arg(4)->Arg(6);

void bm_association_optimal_reduction(benchmark::State& state) {
    const TrackSet tracks = optimizer_demo_tracks(7);
    const int j = static_cast<int>(tracks.size()) - 1;
    const StepBounds bounds;
    const int k_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto [map, states] = association_optimal_reduction(tracks, j, bounds, k_max);
        benchmark::DoNotOptimize(map.psi());
        benchmark::DoNotOptimize(states.back().k);
    }
}
BENCHMARK(bm_association_optimal_reduction)->Arg(5)->Arg(25);

void bm_run_single(benchmark::State& state) {
    const Method method = static_cast<Method>(state.range(0));
    const Scenario scenario = generate_scenario(ScenarioSpec{});
    SplitMix64 rng(0xbead);
    auto [s1, s2] = sample_realization(scenario, rng);
    RunParams params;
    for (auto _ : state) {
        int incorrect = run_single(s1, s2, method, params);
        benchmark::DoNotOptimize(incorrect);
    }
}
BENCHMARK(bm_run_single)
    ->Arg(static_cast<int>(Method::Full))
    ->Arg(static_cast<int>(Method::FusionOpt))
    ->Arg(static_cast<int>(Method::AssocOpt));

}  // namespace

BENCHMARK_MAIN();
