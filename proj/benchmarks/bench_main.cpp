#include <benchmark/benchmark.h>

#include "invislat/dynamics.hpp"
#include "invislat/extended.hpp"
#include "invislat/families.hpp"
#include "invislat/scattering.hpp"
#include "invislat/spectrum.hpp"
#include "invislat/waveguide.hpp"

using namespace invislat;

namespace {

const FamilySpec kCosh{FamilyKind::Cosh, 3, 0.6, 0.0, 1.0};
const FamilySpec kSinh{FamilyKind::Sinh, 3, 0.01, 0.5, 1.0};

void BM_ClosedForm(benchmark::State& state) {
  const auto sites = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_family_centered(kCosh, sites));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ClosedForm)->Arg(100)->Arg(400)->Arg(1600);

void BM_IteratedPairs(benchmark::State& state) {
  FamilySpec spec = kCosh;
  spec.levels = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(iterate_family(spec, -196, 400));
}
BENCHMARK(BM_IteratedPairs)->DenseRange(1, 3);

void BM_Spectrum(benchmark::State& state) {
  const Lattice lat = synthesize_family_centered(kSinh, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(lat));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Spectrum)->RangeMultiplier(2)->Range(50, 400)->Complexity()->Unit(benchmark::kMillisecond);

void BM_TransferMatrix(benchmark::State& state) {
  const Lattice lat = synthesize_family_centered(kCosh, 400);
  const std::vector<double> q = default_q_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scatter_numeric(lat, q));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TransferMatrix)->Arg(64)->Arg(512);

void BM_TransferMatrixExtended(benchmark::State& state) {
  const FamilySpec spec = state.range(0) == 0 ? kCosh : kSinh;
  const std::vector<double> q = default_q_grid(512);
  for (auto _ : state) benchmark::DoNotOptimize(scatter_family_numeric(spec, q));
}
BENCHMARK(BM_TransferMatrixExtended)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_AnalyticProduct(benchmark::State& state) {
  const std::vector<LevelSpec> levels = family_levels(kSinh);
  const std::vector<double> q = default_q_grid(512);
  for (auto _ : state) benchmark::DoNotOptimize(scatter_analytic(levels, q));
}
BENCHMARK(BM_AnalyticProduct);

void BM_Evolve(benchmark::State& state) {
  const Lattice lat = synthesize_family_centered(kSinh, 400);
  EvolutionOptions options;
  options.t_max = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evolve(lat, WavepacketSpec{}, options));
  state.counters["steps"] = options.t_max / options.dt;
}
BENCHMARK(BM_Evolve)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SolveModulation(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_modulation(2.0));
}
BENCHMARK(BM_SolveModulation);

}  // namespace
BENCHMARK_MAIN();
