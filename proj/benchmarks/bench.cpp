// Microbenchmarks for the solver stages on seeded synthetic instances.

#include <benchmark/benchmark.h>

#include "lpstcn/generator.hpp"
#include "lpstcn/linear_model.hpp"
#include "lpstcn/master.hpp"
#include "lpstcn/oracle.hpp"
#include "lpstcn/pricing.hpp"
#include "lpstcn/solver.hpp"

namespace {

lpstcn::Instance sized_instance(int n1, int n2, std::uint64_t seed = 9001) {
  lpstcn::GenParams params;
  params.n1 = n1;
  params.n2 = n2;
  return lpstcn::generate_instance(seed, params);
}

void BM_MasterLp(benchmark::State& state) {
  lpstcn::Instance inst = sized_instance(static_cast<int>(state.range(0)),
                                         static_cast<int>(state.range(1)));
  std::vector<lpstcn::Column> columns = lpstcn::initial_columns(inst);
  lpstcn::RmpModel rmp = lpstcn::build_rmp(inst, columns);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lpstcn::solve_lp(rmp.model));
  }
}
BENCHMARK(BM_MasterLp)->Args({8, 10})->Args({15, 30})->Args({30, 90});

void BM_PricingRound(benchmark::State& state) {
  lpstcn::Instance inst = sized_instance(static_cast<int>(state.range(0)), 0);
  lpstcn::CgOutcome cg = lpstcn::run_column_generation(inst);
  for (auto _ : state) {
    for (const lpstcn::VehicleType& k : inst.fleet) {
      benchmark::DoNotOptimize(
          lpstcn::price_columns(inst, cg.duals, k.id, 1e-6));
    }
  }
}
BENCHMARK(BM_PricingRound)->Arg(8)->Arg(15)->Arg(30);

void BM_FullSolve(benchmark::State& state) {
  lpstcn::Instance inst = sized_instance(static_cast<int>(state.range(0)),
                                         static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lpstcn::solve(inst));
  }
}
BENCHMARK(BM_FullSolve)->Args({5, 8})->Args({8, 10})->Args({15, 30})
    ->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  lpstcn::Instance inst = sized_instance(static_cast<int>(state.range(0)),
                                         static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lpstcn::solve_exact(inst));
  }
}
BENCHMARK(BM_Oracle)->Args({5, 8})->Args({8, 10})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
