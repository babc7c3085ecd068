#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "nlw/norms.hpp"
#include "nlw/profiles.hpp"
#include "nlw/spectral.hpp"
#include "nlw/wave.hpp"

using namespace nlw;

namespace {

// Second argument: 0 serial reference, 1 OpenMP.
void BM_kick(benchmark::State& st) {
  RadialGrid g(2.0, 2.0 / st.range(0), 3);
  std::vector<double> u(g.size()), v(g.size(), 0.0), acc(g.size());
  for (size_t i = 0; i < g.size(); ++i) u[i] = std::exp(-g.r[i] * g.r[i]);
  for (auto _ : st) {
    kick(g, 1.0, 1e-4, u, v, acc, st.range(1) != 0);
    benchmark::DoNotOptimize(v.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_kick)->Args({1 << 16, 0})->Args({1 << 16, 1})->Args({1 << 20, 0})->Args({1 << 20, 1});

void BM_force_flow(benchmark::State& st) {
  auto m = Nonlinearity::kg_exp();
  std::vector<double> u0(st.range(0)), v0(st.range(0), 0.0);
  for (size_t i = 0; i < u0.size(); ++i) u0[i] = 1.2 * std::sin(0.001 * static_cast<double>(i));
  for (auto _ : st) {
    auto u = u0, v = v0;
    benchmark::DoNotOptimize(force_flow(&m, 1e-3, 0.1, u, v, st.range(1) != 0));
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_force_flow)->Args({1 << 16, 0})->Args({1 << 16, 1});

void BM_holder(benchmark::State& st) {
  auto u = build_moser(8.0);
  for (auto _ : st) benchmark::DoNotOptimize(holder_norm(u, 0.5, st.range(0) != 0));
}
BENCHMARK(BM_holder)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_band_sup(benchmark::State& st) {
  auto u = build_moser(8.0);
  for (auto _ : st) benchmark::DoNotOptimize(band_sup(u, 3, st.range(0) != 0));
}
BENCHMARK(BM_band_sup)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_spectrum(benchmark::State& st) {
  auto u = build_moser(8.0);
  for (auto _ : st) benchmark::DoNotOptimize(Spectrum::of_profile(u, st.range(0) != 0).l2_sq());
}
BENCHMARK(BM_spectrum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
