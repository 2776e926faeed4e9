// Microbenchmarks for the hot paths: exact invariant chains, the closed-form
// solver (quadrature-bound), the delta solution, Monte-Carlo throughput and
// the upwind marcher.  Build with -DCMAKE_BUILD_TYPE=Release for stable
// numbers; run ./benchmarks/lapcas_bench --benchmark_min_time=0.2.

#include <benchmark/benchmark.h>

#include <vector>

#include "lapcas/cascade.hpp"
#include "lapcas/dini.hpp"
#include "lapcas/quadrature.hpp"
#include "lapcas/telegraph.hpp"
#include "lapcas/upwind.hpp"
#include "lapcas/verhulst.hpp"

namespace {

using namespace lapcas;
namespace vh = lapcas::verhulst;

const vh::VerhulstParams PR = vh::VerhulstParams::checked(-2.0, 0.5);

CharacteristicSystem verhulst_cs(long nu) {
  const UPoly p({Rat(0), Rat(1), Rat(-2)});
  const UPoly q({Rat(0), Rat(0), Rat(1, 2)});
  return to_characteristic(master_system(p, q, Rat(nu)));
}

void BM_InvariantChain(benchmark::State& state) {
  const CharacteristicSystem cs = verhulst_cs(state.range(0));
  for (auto _ : state) {
    const InvariantChain chain = build_chain(cs, 16);
    benchmark::DoNotOptimize(chain.terminated_forward);
  }
}

void BM_ClosedFormPoint(benchmark::State& state) {
  const vh::InitialDensity b = vh::InitialDensity::bump(0.1, 0.3);
  double x = 0.35;
  for (auto _ : state) {
    const vh::SolutionPoint s = vh::solve(b, x, 1.0, PR);
    benchmark::DoNotOptimize(s.W);
    x = 0.75 - x;  // alternate between two points to defeat caching
  }
}

void BM_DeltaSolve(benchmark::State& state) {
  for (auto _ : state) {
    const vh::MixedDistribution1D d = vh::solve_delta(0.5, 1.0, PR);
    benchmark::DoNotOptimize(d.total_mass());
  }
}

void BM_MassIntegral(benchmark::State& state) {
  const vh::InitialDensity b = vh::InitialDensity::bump(0.1, 0.3);
  for (auto _ : state) {
    const double m = integrate([&](double x) { return vh::solve(b, x, 1.0, PR).W; }, 0.17,
                               0.62, 1e-7);
    benchmark::DoNotOptimize(m);
  }
}

void BM_McSimulate(benchmark::State& state) {
  mc::McConfig cfg;
  cfg.params = PR;
  cfg.init = vh::InitialDensity::delta(0.5);
  cfg.paths = static_cast<std::size_t>(state.range(0));
  cfg.checkpoints = {0.5, 1.0, 2.0};
  cfg.seed = 1;
  cfg.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    const mc::EmpiricalEnsemble ens = mc::simulate(cfg);
    benchmark::DoNotOptimize(ens.checkpoints.back().sorted_x.back());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(cfg.paths));
}

void BM_UpwindSolve(benchmark::State& state) {
  const vh::InitialDensity b = vh::InitialDensity::bump(0.1, 0.3);
  const pde::Grid1D g{0.0, pde::default_x_hi(PR), static_cast<std::size_t>(state.range(0))};
  pde::PdeConfig cfg;
  cfg.params = PR;
  for (auto _ : state) {
    const auto states = pde::solve(b, g, cfg, {0.25});
    benchmark::DoNotOptimize(states.front().W.back());
  }
}

void BM_DiniChain(benchmark::State& state) {
  const MPoly3 x = MPoly3::var(0), y = MPoly3::var(1), z = MPoly3::var(2);
  const MPoly3 phi = x * x * y * y - Rat(3, 2) * (x * y) + MPoly3(2);
  const MPoly3 psi = y * y * z - Rat(5) * z + y;
  const MPoly3 theta = y * y * y - y;
  for (auto _ : state) {
    const MPoly3 u = dini::dini_u(dini::dini_v(phi, psi), theta);
    benchmark::DoNotOptimize(dini::check_L(u).is_zero());
  }
}

BENCHMARK(BM_InvariantChain)->Arg(3)->Arg(6)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ClosedFormPoint)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DeltaSolve)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MassIntegral)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McSimulate)->Args({10000, 1})->Args({10000, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UpwindSolve)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiniChain)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
