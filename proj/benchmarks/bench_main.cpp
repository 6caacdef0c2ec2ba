#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "kicktop/bipartite.hpp"
#include "kicktop/knn.hpp"
#include "kicktop/lyapunov.hpp"
#include "kicktop/mutual_info.hpp"
#include "kicktop/quantum.hpp"
#include "kicktop/rng.hpp"
#include "kicktop/rotor.hpp"

using namespace kicktop;

namespace {

constexpr double kQuarter = 0.75 * std::numbers::pi;

std::vector<double> correlated_pairs(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> xy(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = rng.uniform();
    xy[2 * i] = a;
    xy[2 * i + 1] = 0.6 * a + 0.4 * rng.uniform();
  }
  return xy;
}

void BM_ClassicalStep(benchmark::State& state) {
  const KickParams params(2.5);
  UnitVector3 x = spherical_to_cartesian({kQuarter, kQuarter});
  for (auto _ : state) {
    x = classical_step(x, params);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_ClassicalStep);

void BM_BipartiteEnsemble(benchmark::State& state) {
  const auto spec = default_ensemble({kQuarter, kQuarter}, 100, 1000, 20, 1);
  const KickParams params(2.5);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_ensemble(spec, params));
}
BENCHMARK(BM_BipartiteEnsemble)->Unit(benchmark::kMillisecond);

void BM_KnnQuery(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const KnnIndex index(PointCloud(2, correlated_pairs(n, 3)));
  std::size_t q = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.query(q, 3));
    q = (q + 1) % n;
  }
}
BENCHMARK(BM_KnnQuery)->Arg(1000)->Arg(10000);

void BM_KsgMutualInformation(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto xy = correlated_pairs(n, 4);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = xy[2 * i];
    b[i] = xy[2 * i + 1];
  }
  for (auto _ : state) benchmark::DoNotOptimize(ksg_mi(a, b, 3).value);
}
BENCHMARK(BM_KsgMutualInformation)->Arg(200)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_FloquetApply(benchmark::State& state) {
  const double j = static_cast<double>(state.range(0));
  const FloquetOperator floquet(j, KickParams(2.5));
  Eigen::VectorXcd psi = coherent_state(j, kQuarter, kQuarter).amplitudes;
  for (auto _ : state) {
    floquet.apply(psi);
    benchmark::DoNotOptimize(psi.data());
  }
}
BENCHMARK(BM_FloquetApply)->Arg(20)->Arg(100)->Arg(200);

void BM_Benettin(benchmark::State& state) {
  const KickParams params(6.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(benettin_lyapunov({kQuarter, kQuarter}, params, 1000, 10).lambda);
  }
}
BENCHMARK(BM_Benettin)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
