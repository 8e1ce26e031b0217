#include <benchmark/benchmark.h>

#include "fnclass/pbc.hpp"
#include "fnclass/simlab.hpp"

using namespace fnclass;

namespace {

LabeledSample sample(std::size_t n) {
    Rng rng = make_rng(1, {kStreamSample});
    return gen_sample(ModelSpec::parse("I-b"), n, n, rng);
}

void BM_DistanceMatrix(benchmark::State& st) {
    const auto s = sample(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(distance_matrix(s));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_DistanceMatrix)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_LooScores(benchmark::State& st) {
    const auto s = sample(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(loo_scores(s, {}));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_LooScores)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_ScoreBatch(benchmark::State& st) {
    const auto sys = make_system(sample(static_cast<std::size_t>(st.range(0))));
    const auto test = sample(500);
    for (auto _ : st) benchmark::DoNotOptimize(score_batch(sys, test));
}
BENCHMARK(BM_ScoreBatch)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace

BENCHMARK_MAIN();
