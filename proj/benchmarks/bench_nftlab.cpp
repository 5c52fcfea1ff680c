// Microbenchmarks for the hot paths: polynomial products, the two
// layer-peeling variants, and forward scattering.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "nftlab/forward.hpp"
#include "nftlab/layerpeel.hpp"
#include "nftlab/polyops.hpp"
#include "nftlab/signals.hpp"
#include "nftlab/synthesis.hpp"
#include "nftlab/types.hpp"

using namespace nft;

namespace {

Poly random_poly(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Poly p(n);
  for (auto& c : p) c = cx(U(rng), U(rng));
  return p;
}

SampledPotential bench_potential(int N) {
  const TimeGrid grid = TimeGrid::snapped(-20.0, 20.0, N);
  return sech_potential(0.4, grid);
}

}  // namespace

static void BM_poly_mul(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Poly a = random_poly(n, 1);
  const Poly b = random_poly(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(poly::mul(a, b));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_poly_mul)->RangeMultiplier(4)->Range(64, 1 << 14)->Complexity();

static void BM_series_exp(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Poly g = random_poly(n, 3);
  for (auto& c : g) c *= 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(poly::series_exp(g, n));
  }
}
BENCHMARK(BM_series_exp)->RangeMultiplier(4)->Range(256, 1 << 12);

static void BM_forward_tr_fast(benchmark::State& state) {
  const SampledPotential p = bench_potential(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_scatter_tr(p, ScatterMode::fast));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_forward_tr_fast)
    ->RangeMultiplier(2)
    ->Range(1 << 10, 1 << 13)
    ->Complexity();

static void BM_forward_ia3_fast(benchmark::State& state) {
  const SampledPotential p = bench_potential(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_scatter_ia(p, 3, ScatterMode::fast));
  }
}
BENCHMARK(BM_forward_ia3_fast)->RangeMultiplier(2)->Range(1 << 10, 1 << 12);

static void BM_lp_fast(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const SampledPotential p = bench_potential(N);
  const JostPolynomialPair P = forward_scatter_tr(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp_fast(P, p.grid));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_lp_fast)
    ->RangeMultiplier(2)
    ->Range(1 << 10, 1 << 14)
    ->Complexity();

static void BM_lp_sequential(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const SampledPotential p = bench_potential(N);
  const JostPolynomialPair P = forward_scatter_tr(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp_sequential(P, p.grid));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_lp_sequential)
    ->RangeMultiplier(2)
    ->Range(1 << 10, 1 << 12)
    ->Complexity();

static void BM_reflection_synthesis(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const TimeGrid grid = TimeGrid::snapped(-30.0, 30.0, N);
  const NFSpectrum sp = sech_spectrum(0.4, 0);
  const SynthesisPlan plan = SynthesisPlan::for_grid(grid, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho_fourier_coeffs(sp.rho, plan));
  }
}
BENCHMARK(BM_reflection_synthesis)->RangeMultiplier(2)->Range(1 << 10, 1 << 12);

BENCHMARK_MAIN();
