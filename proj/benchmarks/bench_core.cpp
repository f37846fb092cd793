#include <benchmark/benchmark.h>

#include "twostage/epimodel.hpp"
#include "twostage/linalg.hpp"
#include "twostage/operators.hpp"
#include "twostage/solver.hpp"
#include "twostage/splitting.hpp"

using namespace twostage;

namespace {

std::pair<DenseMatrix, DenseMatrix> system(std::size_t groups, double phi = 0.10) {
  const auto p = epi::SaiuqrParams::reference().with_phi(phi);
  DenseMatrix a = epi::build_transition(p);
  DenseMatrix b = epi::build_infection(p);
  if (groups > 1) std::tie(a, b) = epi::expand_age(a, b, epi::AgeStructure::same_group_only(groups));
  return {a, b};
}

void BM_LuSolve(benchmark::State& state) {
  const auto [a, b] = system(static_cast<std::size_t>(state.range(0)) / 4);
  for (auto _ : state) benchmark::DoNotOptimize(lu_solve(a, b));
}
BENCHMARK(BM_LuSolve)->Arg(4)->Arg(64);

void BM_SpectralRadius(benchmark::State& state) {
  const auto [a, b] = system(static_cast<std::size_t>(state.range(0)) / 4);
  const DenseMatrix ngm = b * inverse(a);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(ngm));
}
BENCHMARK(BM_SpectralRadius)->Arg(4)->Arg(64);

void BM_EigenvaluesQr(benchmark::State& state) {
  const auto [a, b] = system(static_cast<std::size_t>(state.range(0)) / 4);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(a));
}
BENCHMARK(BM_EigenvaluesQr)->Arg(4)->Arg(64);

void BM_TwoStageSolve(benchmark::State& state) {
  const auto [a, b] = system(static_cast<std::size_t>(state.range(0)) / 4);
  const Splitting outer = gauss_seidel_splitting(a);
  TwoStageConfig cfg;
  cfg.schedule = {1};
  cfg.omega = state.range(1) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(run_stationary(a, b, outer, cfg));
}
BENCHMARK(BM_TwoStageSolve)->Args({4, 10})->Args({4, 17})->Args({64, 10})->Args({64, 17});

void BM_BuildT(benchmark::State& state) {
  const auto [a, b] = system(static_cast<std::size_t>(state.range(0)) / 4);
  const Splitting outer = jacobi_splitting(a);
  const Splitting inner = sor_splitting(outer.U(), 1.7);
  for (auto _ : state) benchmark::DoNotOptimize(build_T(outer, inner, static_cast<std::size_t>(state.range(1))));
}
BENCHMARK(BM_BuildT)->Args({4, 2})->Args({64, 2})->Args({64, 8});

}  // namespace

BENCHMARK_MAIN();
