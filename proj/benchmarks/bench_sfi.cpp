#include <benchmark/benchmark.h>

#include "sfi/bessel.hpp"
#include "sfi/momentum_map.hpp"
#include "sfi/rates.hpp"

namespace {

void BM_BesselJ(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double x = 0.5 * n + 3.0;
    for (auto _ : state) benchmark::DoNotOptimize(sfi::bessel_j(n, x));
}
BENCHMARK(BM_BesselJ)->Arg(1)->Arg(10)->Arg(100)->Arg(500);

void BM_BesselSequence(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sfi::bessel_j_sequence(n, 0.7 * n));
}
BENCHMARK(BM_BesselSequence)->Arg(100)->Arg(1000);

void BM_BesselAsymptotic(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(sfi::bessel_asymptotic(100, 50.0));
}
BENCHMARK(BM_BesselAsymptotic);

// Table set-up plus one evaluation, as in a fresh rate call.
void BM_GeneralizedBesselCold(benchmark::State& state) {
    const double v = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sfi::gen_bessel_j(30, 20.0, -v));
}
BENCHMARK(BM_GeneralizedBesselCold)->Arg(1)->Arg(10)->Arg(50);

void BM_GeneralizedBesselWarm(benchmark::State& state) {
    const sfi::GeneralizedBessel g(-static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(g(30, 20.0));
}
BENCHMARK(BM_GeneralizedBesselWarm)->Arg(1)->Arg(10)->Arg(50);

sfi::FieldParams field(sfi::Polarization pol) {
    return sfi::derive_params(sfi::LaserInput::from_ponderomotive(0.057, 0.22, pol), 0.5);
}

void BM_DifferentialRate(benchmark::State& state) {
    const auto pol = state.range(0) ? sfi::Polarization::circular : sfi::Polarization::linear;
    const auto fp = field(pol);
    const auto st = sfi::BoundStateModel::hydrogen_1s();
    for (auto _ : state) benchmark::DoNotOptimize(sfi::dw_domega(fp, st, 1.0));
}
BENCHMARK(BM_DifferentialRate)->Arg(0)->Arg(1)->ArgNames({"circular"});

void BM_TotalRate(benchmark::State& state) {
    const auto pol = state.range(0) ? sfi::Polarization::circular : sfi::Polarization::linear;
    const auto fp = field(pol);
    const auto st = sfi::BoundStateModel::hydrogen_1s();
    for (auto _ : state) benchmark::DoNotOptimize(sfi::total_rate(fp, st).w);
}
BENCHMARK(BM_TotalRate)->Arg(0)->Arg(1)->ArgNames({"circular"})->Unit(benchmark::kMillisecond);

void BM_MomentumMap(benchmark::State& state) {
    const auto fp = field(sfi::Polarization::linear);
    sfi::MomentumGridSpec g;
    g.n_par = 41;
    g.n_perp = 41;
    for (auto _ : state) benchmark::DoNotOptimize(sfi::momentum_map(fp, sfi::BoundStateModel::hydrogen_1s(), g).values);
}
BENCHMARK(BM_MomentumMap)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
