#include <benchmark/benchmark.h>

#include <cmath>

#include "degenflow/disc_ops.hpp"
#include "degenflow/flows.hpp"
#include "degenflow/frac_kernel.hpp"
#include "degenflow/gamma_viscosity.hpp"
#include "degenflow/grid.hpp"
#include "degenflow/spectral.hpp"
#include "degenflow/state.hpp"
#include "degenflow/weights.hpp"

using namespace degenflow;

namespace {

void BM_AssembleEigendecompose(benchmark::State& st) {
  Grid1D grid(static_cast<int>(st.range(0)));
  Weight w = power_weight(grid, GammaSet::one_d(), 0.5);
  for (auto _ : st) {
    auto dec = eigendecompose(assemble_operator(w, grid));
    benchmark::DoNotOptimize(dec.eigenvalues.data());
  }
}
BENCHMARK(BM_AssembleEigendecompose)->Arg(32)->Arg(128)->Arg(512);

void BM_Multiplier1D(benchmark::State& st) {
  Grid1D grid(static_cast<int>(st.range(0)));
  auto spec = MultiplierSpec::make(0.5, 1);
  State v = random_state(grid, 7);
  for (auto _ : st) benchmark::DoNotOptimize(apply_multiplier(v, spec));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_Multiplier1D)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_KernelSamples2D(benchmark::State& st) {
  Grid2D grid(static_cast<int>(st.range(0)));
  auto spec = MultiplierSpec::make(0.5, 2);
  for (auto _ : st) benchmark::DoNotOptimize(kernel_samples(spec, grid));
}
BENCHMARK(BM_KernelSamples2D)->Arg(64)->Arg(256);

void BM_MinimizingMovement(benchmark::State& st) {
  Grid1D grid(static_cast<int>(st.range(0)));
  Weight w = power_weight(grid, GammaSet::one_d(), 0.5).with_viscosity(1e-3);
  auto op = assemble_operator(w, grid);
  State u0 = random_state(grid, 3);
  for (auto _ : st) benchmark::DoNotOptimize(minimizing_movement(u0, op, 1e-3, 0.1));
}
BENCHMARK(BM_MinimizingMovement)->Arg(65)->Arg(257);

void BM_FlowPropagator(benchmark::State& st) {
  Grid1D grid(static_cast<int>(st.range(0)));
  Weight w = power_weight(grid, GammaSet::one_d(), 0.5);
  State u0 = random_state(grid, 5);
  for (auto _ : st) {
    FlowPropagator prop(FlowKind::T3, w);
    benchmark::DoNotOptimize(prop.evolve(u0, 0.1));
  }
}
BENCHMARK(BM_FlowPropagator)->Arg(64)->Arg(256);

void BM_Mollify(benchmark::State& st) {
  Grid1D grid(4096);
  State u = make_h(grid);
  auto mol = make_mollifier(static_cast<int>(st.range(0)), grid.spacing());
  for (auto _ : st) benchmark::DoNotOptimize(mollify(u, mol));
}
BENCHMARK(BM_Mollify)->Arg(8)->Arg(64)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
