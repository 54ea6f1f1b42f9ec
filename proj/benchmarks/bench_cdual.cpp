#include <benchmark/benchmark.h>

#include "cdual/benchmark_problems.hpp"
#include "cdual/oracle.hpp"

namespace {

cdual::OracleOptions no_oracle() {
  cdual::OracleOptions o;
  o.enabled = false;
  return o;
}

void BM_GpSolve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cdual::gp_solve(cdual::SolverConfig{}, no_oracle()));
}
BENCHMARK(BM_GpSolve)->Unit(benchmark::kMillisecond);

void BM_ThcSolve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cdual::thc_solve(cdual::SolverConfig{}, no_oracle()));
}
BENCHMARK(BM_ThcSolve)->Unit(benchmark::kMicrosecond);

void BM_GpDecompose(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cdual::gp_decompose());
}
BENCHMARK(BM_GpDecompose)->Unit(benchmark::kMillisecond);

void BM_PolyMul(benchmark::State& state) {
  cdual::MultiPoly x = cdual::MultiPoly::variable(2, 0);
  cdual::MultiPoly y = cdual::MultiPoly::variable(2, 1);
  cdual::MultiPoly p = (x + y + cdual::MultiPoly::constant(2, 1)).pow(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(p * p);
}
BENCHMARK(BM_PolyMul)->Arg(2)->Arg(4)->Arg(8);

void BM_Jacobi4(benchmark::State& state) {
  cdual::Lcg rng(3);
  cdual::SymMatrix S(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) S.set(i, j, rng.next_unit() - 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(cdual::jacobi_eigen(S));
}
BENCHMARK(BM_Jacobi4);

void BM_Multistart(benchmark::State& state) {
  cdual::MultiPoly p = cdual::gp_objective();
  for (auto _ : state)
    benchmark::DoNotOptimize(cdual::multistart(p, cdual::gp_default_box(), 64, 42, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_Multistart)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_GridScan401(benchmark::State& state) {
  cdual::MultiPoly p = cdual::gp_objective();
  for (auto _ : state) benchmark::DoNotOptimize(cdual::grid_scan(p, cdual::gp_default_box(), 401));
}
BENCHMARK(BM_GridScan401)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
