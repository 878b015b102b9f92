#include <benchmark/benchmark.h>

#include <vector>

#include <khess/barenblatt.hpp>
#include <khess/evolution.hpp>
#include <khess/radial_hessian.hpp>
#include <khess/stationary.hpp>

using namespace khess;

static void BM_OperatorEvaluate(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const ProblemParams p = make_params(3, 2);
    const RadialGrid g(1.0, m);
    const RadialProfile u = torsion_solution(1.0, p, g);
    const RadialSkOperator op(g, p);
    std::vector<double> out(static_cast<std::size_t>(m) + 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(op.evaluate(u.values(), out));
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_OperatorEvaluate)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_ApplySk(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const ProblemParams p = make_params(5, 3);
    const RadialProfile u = torsion_solution(1.0, p, RadialGrid(1.0, m));
    for (auto _ : state) benchmark::DoNotOptimize(apply_sk_radial(u, p));
}
BENCHMARK(BM_ApplySk)->Arg(256)->Arg(4096);

static void BM_ExplicitStep(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const ProblemParams p = make_params(3, 3);
    const StationarySolution th = profile_on_ball(1.0, p, RadialGrid(1.0, m), 20000);
    EvolutionState s{th.profile, 0.0, 0.0, 0, 0.9};
    s.dt = stable_dt(s, p);
    for (auto _ : state) benchmark::DoNotOptimize(step(s, p));
}
BENCHMARK(BM_ExplicitStep)->Arg(128)->Arg(512);

static void BM_Shooting(benchmark::State& state) {
    const ProblemParams p = make_params(4, 3);
    for (auto _ : state) benchmark::DoNotOptimize(shoot_profile(p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Shooting)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_EvolveToOne(benchmark::State& state) {
    const ProblemParams p = make_params(3, 2);
    const StationarySolution th = profile_on_ball(1.0, p, RadialGrid(1.0, static_cast<int>(state.range(0))), 20000);
    const std::vector<double> ts{1.0};
    for (auto _ : state) benchmark::DoNotOptimize(evolve_to(th.profile, 1.0, p, th, ts));
}
BENCHMARK(BM_EvolveToOne)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_BarenblattMass(benchmark::State& state) {
    const BarenblattSolution b(make_params(5, 3), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(mass_of(b, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BarenblattMass)->Arg(20000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
