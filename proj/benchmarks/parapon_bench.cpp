#include <benchmark/benchmark.h>

#include "parapon/family.hpp"
#include "parapon/loci.hpp"
#include "parapon/verify.hpp"

using namespace parapon;

static void BM_TransverseStep(benchmark::State& state) {
  const FamilyConfig cfg = FamilyConfig::parabola(5, 1.0, closure_ratio(5));
  ProjPoint p = ParabolaStd(1.0).point_at(0.7);
  for (auto _ : state) {
    p = transverse_step(cfg.outer, cfg.caustic, cfg.caustic_center, p);
    if (!p.is_finite()) p = ParabolaStd(1.0).point_at(0.7);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_TransverseStep);

static void BM_SolveClosure(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_closure_radius(1.0, N));
}
BENCHMARK(BM_SolveClosure)->DenseRange(3, 7);

static void BM_MakeOrbit(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const FamilyConfig cfg = FamilyConfig::parabola(N, 1.0, closure_ratio(N));
  double y = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_orbit(cfg, y));
    y = y > 3.0 ? -3.0 : y + 0.013;
  }
}
BENCHMARK(BM_MakeOrbit)->DenseRange(3, 6);

static void BM_TriangleCenter(benchmark::State& state) {
  const ProjPoint v[3] = {ProjPoint::finite(0.3, -0.2), ProjPoint::finite(5.1, 0.4), ProjPoint::finite(1.7, 3.9)};
  const CenterId id(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(triangle_center(v, id));
}
BENCHMARK(BM_TriangleCenter)->Arg(1)->Arg(26)->Arg(161);

static void BM_TraceLocus(benchmark::State& state) {
  const FamilyConfig cfg = FamilyConfig::parabola(3, 1.0, closure_ratio(3));
  ParameterGrid g;
  g.count = static_cast<int>(state.range(0));
  const LocusTarget t = LocusTarget::parse("X10'");
  for (auto _ : state) benchmark::DoNotOptimize(trace_locus(cfg, t, g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TraceLocus)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_FitConic(benchmark::State& state) {
  const FamilyConfig cfg = FamilyConfig::parabola(3, 1.0, closure_ratio(3));
  ParameterGrid g;
  const auto pts = trace_locus(cfg, LocusTarget::of_center(2), g).points();
  for (auto _ : state) benchmark::DoNotOptimize(fit_conic(pts));
}
BENCHMARK(BM_FitConic);

static void BM_Suite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(SuiteConfig{}));
}
BENCHMARK(BM_Suite)->Unit(benchmark::kMillisecond)->Iterations(3);

BENCHMARK_MAIN();
