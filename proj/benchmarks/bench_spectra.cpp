#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "bdspectra/eigen_tri.hpp"
#include "bdspectra/monotonicity.hpp"
#include "bdspectra/oracle.hpp"
#include "bdspectra/spectral_calculus.hpp"

using namespace bdspectra;

namespace {

BirthDeathSpec chain(std::size_t n) {
  std::vector<CoeffExpr> a, b;
  for (std::size_t j = 0; j <= n; ++j) {
    const std::string k = std::to_string(j + 1);
    a.push_back(parse_expr(k + " + t*exp(-t)"));
    b.push_back(parse_expr(j == 0 ? "0" : k + " - t^2/2"));
  }
  return BirthDeathSpec(std::move(a), std::move(b), {0.0, 1.0}, "chain" + std::to_string(n));
}

void BM_SturmBisection(benchmark::State& state) {
  const auto S = assemble_S(chain(static_cast<std::size_t>(state.range(0))), 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_bisect(S));
}
BENCHMARK(BM_SturmBisection)->Arg(4)->Arg(16)->Arg(48);

void BM_SpectrumWithVectors(benchmark::State& state) {
  const auto S = assemble_S(chain(static_cast<std::size_t>(state.range(0))), 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(compute_spectrum(S));
}
BENCHMARK(BM_SpectrumWithVectors)->Arg(4)->Arg(16)->Arg(48);

void BM_DenseEigen(benchmark::State& state) {
  const auto S = assemble_S(chain(static_cast<std::size_t>(state.range(0))), 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(dense_eig(S));
}
BENCHMARK(BM_DenseEigen)->Arg(4)->Arg(16)->Arg(48);

void BM_DerivativeForms(benchmark::State& state) {
  const auto s = sample(chain(static_cast<std::size_t>(state.range(0))), 0.4);
  const auto spectrum = compute_spectrum(assemble_S(s));
  const auto form = static_cast<DerivativeForm>(state.range(1));
  for (auto _ : state)
    for (std::size_t k = 0; k < spectrum.size(); ++k)
      benchmark::DoNotOptimize(derivative_terms(s, spectrum.values[k], spectrum.q[k], form));
}
BENCHMARK(BM_DerivativeForms)->ArgsProduct({{4, 16}, {0, 1, 2, 3}});

void BM_ScanBMax(benchmark::State& state) {
  const auto a1 = example_a1();
  const auto grid = static_cast<std::size_t>(state.range(0));
  ScanOptions options;
  options.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(scan(a1, {Criterion::b_max, Direction::up}, grid, options));
}
BENCHMARK(BM_ScanBMax)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
