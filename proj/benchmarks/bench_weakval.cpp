#include <benchmark/benchmark.h>

#include <random>

#include <weakval/weakval.hpp>

using namespace weakval;

namespace {

HermitianMatrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> entries(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    entries[r * dim + r] = Complex(u(rng));
    for (std::size_t c = r + 1; c < dim; ++c) {
      const Complex z{u(rng), u(rng)};
      entries[r * dim + c] = z;
      entries[c * dim + r] = std::conj(z);
    }
  }
  return {dim, std::move(entries)};
}

void BM_Eigh(benchmark::State& state) {
  std::mt19937_64 rng(42);
  const HermitianMatrix m =
      random_hermitian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    EighResult r = eigh(m);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Eigh)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_ExtractDual(benchmark::State& state) {
  const Scenario s = preset("ritchie");
  const AnalyticWave wave = scenario_wave(s);
  ExtractOptions options;
  options.cross_check = false;
  for (auto _ : state) {
    ExtractionResult r = extract_weak_value(wave, options);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ExtractDual);

void BM_ExtractWithCrossCheck(benchmark::State& state) {
  const Scenario s = preset("ritchie");
  const AnalyticWave wave = scenario_wave(s);
  for (auto _ : state) {
    ExtractionResult r = extract_weak_value(wave);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ExtractWithCrossCheck);

void BM_ParseOpticalExpression(benchmark::State& state) {
  const std::string source = optical_expression_source();
  for (auto _ : state) {
    expr::WaveExpr e = expr::parse(source);
    benchmark::DoNotOptimize(e);
  }
}
BENCHMARK(BM_ParseOpticalExpression);

void BM_EvaluateExpressionDual(benchmark::State& state) {
  const expr::WaveExpr e = expr::parse(optical_expression_source());
  const OpticalParams p = ritchie_params();
  std::map<std::string, DualBi> bindings;
  for (const auto& [name, value] : optical_expression_params(p))
    bindings.emplace(name, value);
  bindings["y"] = DualBi::seed_q(Complex{});
  bindings["beta"] = DualBi::seed_beta(Complex{});
  for (auto _ : state) {
    DualBi v = expr::evaluate(e, bindings);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_EvaluateExpressionDual);

void BM_AvSeries(benchmark::State& state) {
  const Scenario s = preset("ritchie");
  const MatrixSystem& sys = s.matrix_system();
  const AvSeriesExpansion series(sys.pre, sys.post, sys.obs, 8);
  for (auto _ : state) {
    Complex v = series.evaluate(0.1, 0.7, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_AvSeries)->Arg(2)->Arg(8);

void BM_SamplePointer(benchmark::State& state) {
  const PostselectedWave wave = scenario_postselected(preset("ensemble-demo"));
  const PointerSampler sampler(wave, default_grid(wave));
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    std::vector<double> xs = sampler.sample(n, 20240817);
    benchmark::DoNotOptimize(xs);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SamplePointer)->Arg(1024)->Arg(16384);

}  // namespace

BENCHMARK_MAIN();
