#include <benchmark/benchmark.h>

#include <fracseq/almost.hpp>
#include <fracseq/classify.hpp>
#include <fracseq/operators.hpp>

using namespace fracseq;

static void BM_Weights(benchmark::State& state) {
  const FracOrder order(0.5);
  const std::size_t count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    WeightVector w = weights(order, count);
    benchmark::DoNotOptimize(w.weights.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Weights)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

static void BM_ApplyDifference(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const TruncatedSequence x = make_generator("zero_one_wave", {}, n);
  const TriangularOperator op = build_frac_delta(FracOrder(0.5));
  for (auto _ : state) {
    TruncatedSequence y = apply(op, x);
    benchmark::DoNotOptimize(y.values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApplyDifference)->RangeMultiplier(2)->Range(512, 8192)->Complexity();

static void BM_Compose(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const TriangularOperator a = build_frac_delta(FracOrder(0.3));
  const TriangularOperator b = build_frac_delta(FracOrder(0.7));
  for (auto _ : state) {
    TriangularOperator c = compose(a, b, n);
    benchmark::DoNotOptimize(c.window());
  }
}
BENCHMARK(BM_Compose)->Arg(64)->Arg(128)->Arg(256);

static void BM_GridSpreads(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const TruncatedSequence x = make_generator("miller_orhan", {}, n);
  for (auto _ : state) {
    AlmostLimitEstimate est = estimate_almost_limit(x, n / 8, 1e-3);
    benchmark::DoNotOptimize(est.spread.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GridSpreads)->RangeMultiplier(2)->Range(2048, 16384)->Complexity();

static void BM_ClassifyCesaro(benchmark::State& state) {
  const RowFiniteMatrix cesaro = as_row_finite(build_cesaro());
  const std::size_t n2 = static_cast<std::size_t>(state.range(0));
  ClassifyOptions opts;
  opts.n1 = n2 / 2;
  opts.n2 = n2;
  for (auto _ : state) {
    ConditionReport r = classify(cesaro, {SpaceId::f, SpaceId::c, std::nullopt}, opts);
    benchmark::DoNotOptimize(r.aggregate);
  }
}
BENCHMARK(BM_ClassifyCesaro)->Arg(256)->Arg(512)->Arg(1024);

BENCHMARK_MAIN();
