#include <benchmark/benchmark.h>

#include <cmath>

#include "wbglimm/glimm.hpp"
#include "wbglimm/grp.hpp"
#include "wbglimm/steady.hpp"
#include "wbglimm/waves.hpp"

namespace {

const wbglimm::ModelParams kParams{1.0, 1.0};

void BM_SolveRiemann(benchmark::State& state) {
  const wbglimm::FluidState l{2.0, 0.3}, r{0.7, -0.4};
  for (auto _ : state) benchmark::DoNotOptimize(wbglimm::solve_riemann(l, r, kParams));
}
BENCHMARK(BM_SolveRiemann);

void BM_EvalSteady(benchmark::State& state) {
  const auto s = wbglimm::solve_steady(1.0, {1.0, 0.1}, kParams);
  double r = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.at(r));
    r = r > 9.0 ? 1.0 : r + 0.013;
  }
}
BENCHMARK(BM_EvalSteady);

void BM_SolveGrpShock(benchmark::State& state) {
  const auto l = wbglimm::solve_steady(10.0, {1.0, 0.5}, kParams);
  const auto r = wbglimm::solve_steady(10.0, {1.0, -0.5}, kParams);
  for (auto _ : state) benchmark::DoNotOptimize(wbglimm::solve_grp(l, r, 10.0, 0.1));
}
BENCHMARK(BM_SolveGrpShock);

void BM_SolveGrpFans(benchmark::State& state) {
  const auto l = wbglimm::solve_steady(3.0, {2.0, 0.05}, kParams);
  const auto r = wbglimm::solve_steady(3.0, {1.0, 0.05}, kParams);
  for (auto _ : state) benchmark::DoNotOptimize(wbglimm::solve_grp(l, r, 3.0, 0.1));
}
BENCHMARK(BM_SolveGrpFans);

// One Glimm step on a dam-break, for a range of mesh sizes.
void BM_GlimmStep(benchmark::State& state) {
  wbglimm::GridSpec g;
  g.r_min = 1.0;
  g.r_max = 5.0;
  g.dr = 4.0 / static_cast<double>(state.range(0));
  auto data = [](double r) {
    return r < 3.0 ? wbglimm::FluidState{2.0, 0.05} : wbglimm::FluidState{1.0, 0.05};
  };
  const wbglimm::GlimmState start = wbglimm::init_approximation(data, g, kParams);
  const wbglimm::Sampler sampler;
  for (auto _ : state) {
    wbglimm::GlimmState s = start;
    benchmark::DoNotOptimize(wbglimm::step(s, g, kParams, sampler, 1.0));
  }
}
BENCHMARK(BM_GlimmStep)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
