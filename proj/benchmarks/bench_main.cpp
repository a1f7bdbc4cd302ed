#include "fqpb/sampling.hpp"
#include "fqpb/suites.hpp"

#include <benchmark/benchmark.h>

using namespace fqpb;

namespace {

Scenario model(int window)
{
    Scenario s;
    s.t = Rational(2);
    s.alpha = x_pow(1);
    s.window = window;
    return s;
}

void BM_CrossedProductMul(benchmark::State& state)
{
    CrossedProduct cp{BaseAutomorphism(Rational(2))};
    Sampler s(1);
    BundleElem a = s.bundle(3, 3), b = s.bundle(3, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(cp.mul(a, b));
}
BENCHMARK(BM_CrossedProductMul);

void BM_HorMul(benchmark::State& state)
{
    CrossedProduct cp{BaseAutomorphism(Rational(2))};
    Sampler s(2);
    HorForm a = s.hor(), b = s.hor();
    for (auto _ : state)
        benchmark::DoNotOptimize(hor_mul(cp, a, b));
}
BENCHMARK(BM_HorMul);

void BM_NablaCurvatureTable(benchmark::State& state)
{
    const int w = static_cast<int>(state.range(0));
    auto mf = make_model_frame(build_model(Rational(2), x_pow(1), w));
    for (auto _ : state)
        benchmark::DoNotOptimize(nabla_curvature_table(mf.cp, mf.ext, w));
}
BENCHMARK(BM_NablaCurvatureTable)->Arg(4)->Arg(6)->Arg(10);

void BM_FodcFromCurvature(benchmark::State& state)
{
    const int w = static_cast<int>(state.range(0));
    auto mf = make_model_frame(build_model(Rational(2), x_pow(1), w));
    auto table = nabla_curvature_table(mf.cp, mf.ext, w);
    for (auto _ : state)
        benchmark::DoNotOptimize(fodc_from_curvature(table, w));
}
BENCHMARK(BM_FodcFromCurvature)->Arg(4)->Arg(6)->Arg(10);

void BM_UniquenessSolve(benchmark::State& state)
{
    const int w = static_cast<int>(state.range(0));
    Session s = make_session(model(w));
    for (auto _ : state)
        benchmark::DoNotOptimize(uniqueness_solve(s.mf, s.fodc, w));
}
BENCHMARK(BM_UniquenessSolve)->Arg(4)->Arg(6);

void BM_Verify(benchmark::State& state)
{
    Session s = make_session(model(6));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_verify(s, 1));
}
BENCHMARK(BM_Verify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
