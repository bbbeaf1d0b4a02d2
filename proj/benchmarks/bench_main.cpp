#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "calogero/dynamics.hpp"
#include "calogero/hydro.hpp"
#include "calogero/soliton_init.hpp"

using namespace calogero;

namespace {

ModelSpec harmonic(int n, int m) {
  ModelSpec s;
  s.c = {0.0, 1.0, 0.06, 0.0};
  s.n_particles = n;
  s.n_solitons = m;
  return s;
}

void BM_DualRhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelSpec s = harmonic(n, 1);
  DualState d;
  for (double x : harmonic_equilibrium_reference(n, 1.0, 1.0)) d.x.emplace_back(x);
  d.z = {cplx(0.0, 0.3)};
  for (auto _ : state) benchmark::DoNotOptimize(dual_rhs(s, d));
  state.SetComplexityN(n);
}
BENCHMARK(BM_DualRhs)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);

void BM_NewtonianRhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelSpec s = harmonic(n, 1);
  PhaseState p;
  p.x = harmonic_equilibrium_reference(n, 1.0, 1.0);
  p.p.assign(p.x.size(), 0.1);
  p.z = {cplx(0.0, 0.3)};
  p.zdot = {cplx(-1.0, 0.0)};
  for (auto _ : state) benchmark::DoNotOptimize(newtonian_rhs(s, p));
}
BENCHMARK(BM_NewtonianRhs)->RangeMultiplier(4)->Range(16, 1024);

void BM_HilbertTransform(benchmark::State& state) {
  const auto g = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(g), rho(g);
  for (std::size_t i = 0; i < g; ++i) {
    x[i] = -1.1 + 2.2 * static_cast<double>(i) / static_cast<double>(g - 1);
    rho[i] = std::abs(x[i]) < 1.0 ? std::sqrt(1.0 - x[i] * x[i]) : 0.0;
  }
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_transform(x, rho));
  state.SetComplexityN(static_cast<long>(g));
}
BENCHMARK(BM_HilbertTransform)->RangeMultiplier(2)->Range(512, 4096)->Complexity(benchmark::oNSquared);

void BM_GradientFlow(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ModelSpec s = harmonic(n, 1);
  s.c.c2 = 0.0;
  const std::vector<cplx> z{cplx(0.5, 0.4)};
  for (auto _ : state) benchmark::DoNotOptimize(gradient_flow(s, z));
}
BENCHMARK(BM_GradientFlow)->Arg(31)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
