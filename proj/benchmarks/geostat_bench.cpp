#include <benchmark/benchmark.h>

#include "geostat/billiard.hpp"
#include "geostat/bures.hpp"
#include "geostat/density_matrix.hpp"
#include "geostat/matrix.hpp"
#include "geostat/operator_means.hpp"
#include "geostat/random.hpp"

namespace {

using namespace geostat;

std::pair<DensityMatrix, DensityMatrix> random_pair(Eigen::Index n) {
  Rng rng = make_rng(20051, "bench", static_cast<std::uint64_t>(n));
  DensityMatrix a(sample_density_hs(rng, n));
  DensityMatrix b(sample_density_hs(rng, n));
  return {std::move(a), std::move(b)};
}

void BM_Eig(benchmark::State& state) {
  const auto [a, b] = random_pair(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eig(a.hermitian()));
}
BENCHMARK(BM_Eig)->RangeMultiplier(2)->Range(2, 32);

void BM_Fidelity(benchmark::State& state) {
  const auto [a, b] = random_pair(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fidelity(a, b));
}
BENCHMARK(BM_Fidelity)->RangeMultiplier(2)->Range(2, 32);

void BM_GeometricMean(benchmark::State& state) {
  const auto [a, b] = random_pair(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(geometric_mean(a.hermitian(), b.hermitian()));
}
BENCHMARK(BM_GeometricMean)->RangeMultiplier(2)->Range(2, 32);

// dominated by the sampling pass along [0, pi)
void BM_BouncePoints(benchmark::State& state) {
  const auto [a, b] = random_pair(state.range(0));
  const GeodesicPath path = geodesic(a, b);
  for (auto _ : state) benchmark::DoNotOptimize(bounce_points(path));
}
BENCHMARK(BM_BouncePoints)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
