#include <benchmark/benchmark.h>

#include "threebody/appendix.hpp"
#include "threebody/choreo.hpp"
#include "threebody/integrator.hpp"
#include "threebody/jet.hpp"

using namespace threebody;

static void BM_JetEqualMass(benchmark::State& state) {
    const auto order = static_cast<int>(state.range(0));
    const auto fam = build(Masses<HighPrec>::equal(), PotentialLaw::power(-1), HighPrec(0.6));
    for (auto _ : state) benchmark::DoNotOptimize(derivatives_of_V(expand_jet(fam, order)));
}
BENCHMARK(BM_JetEqualMass)->Arg(6)->Arg(12)->Arg(24);

static void BM_JetLog(benchmark::State& state) {
    const auto fam = build(Masses<HighPrec>(HighPrec(1), HighPrec(2), HighPrec(3)), PotentialLaw::log(), HighPrec(0.4));
    for (auto _ : state) benchmark::DoNotOptimize(derivatives_of_V(expand_jet(fam, 12)));
}
BENCHMARK(BM_JetLog);

static void BM_IntegrateNewtonian(benchmark::State& state) {
    const auto fam = build(Masses<double>::equal(), PotentialLaw::power(-1), 0.6);
    IntegratorConfig cfg;
    cfg.extended_precision = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(integrate(fam, cfg, 10.0));
}
BENCHMARK(BM_IntegrateNewtonian)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_ChoreoResidual(benchmark::State& state) {
    const choreo::Config cfg;
    for (auto _ : state) benchmark::DoNotOptimize(choreo::residual(1.1705, 7.1131, cfg));
}
BENCHMARK(BM_ChoreoResidual)->Unit(benchmark::kMillisecond);

static void BM_Bezout(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(appendix::verify_bezout());
}
BENCHMARK(BM_Bezout)->Unit(benchmark::kMillisecond);

static void BM_Resultant(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(appendix::verify_resultant());
}
BENCHMARK(BM_Resultant)->Unit(benchmark::kMillisecond);

static void BM_Certificate(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(appendix::certify(40));
}
BENCHMARK(BM_Certificate)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
