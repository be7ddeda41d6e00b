#include "dt4/invariants.hpp"
#include "dt4/parallel.hpp"
#include "dt4/transforms.hpp"

#include <benchmark/benchmark.h>

using namespace dt4;

namespace {

const ParamPoly& g()
{
    static const ParamPoly s = ParamPoly::symbol("g");
    return s;
}

void BM_SeriesMulSymbolic(benchmark::State& st)
{
    const int order = static_cast<int>(st.range(0));
    PowerSeries a = series_pow(macmahon(order), g());
    PowerSeries b = series_pow(PowerSeries::geometric(ParamPoly(1), order), g());
    for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SeriesMulSymbolic)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SeriesMulRational(benchmark::State& st)
{
    const int order = static_cast<int>(st.range(0));
    PowerSeries a = macmahon(order), b = fuss_catalan(3, order);
    for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SeriesMulRational)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_UniversalU(benchmark::State& st)
{
    PowerSeries f = PowerSeries::geometric(ParamPoly(1), static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(universal_u(f));
}
BENCHMARK(BM_UniversalU)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_LatticeBracket(benchmark::State& st)
{
    GeometryModel model = GeometryModel::generic();
    VertexAlgebra va{PairingTables(model)};
    VAState vac({0, 1}, ParamPoly(1));
    VAState N = build_Nnp(model, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(va.bracket(N, vac));
}
BENCHMARK(BM_LatticeBracket)->Arg(2)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_HilbBracketOracle(benchmark::State& st)
{
    set_worker_count(1);
    GeometryModel model = GeometryModel::generic();
    const int n = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(build_hilb_classes_bracket(model, n));
}
BENCHMARK(BM_HilbBracketOracle)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_SegrePipeline(benchmark::State& st)
{
    const int order = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(segre_series({{2, g(), ""}}, order));
}
BENCHMARK(BM_SegrePipeline)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_NekrasovPipeline(benchmark::State& st)
{
    const int order = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(nekrasov_series({{1, g(), ""}}, order));
}
BENCHMARK(BM_NekrasovPipeline)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
