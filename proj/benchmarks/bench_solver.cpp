#include <benchmark/benchmark.h>

#include "scpulse/eulerian.hpp"
#include "scpulse/integrator.hpp"
#include "scpulse/reference.hpp"
#include "scpulse/uniqueness.hpp"

using namespace scpulse;

namespace {

LagrangianState initial(std::size_t n) {
  return build_initial_lagrangian(make_initial_data(Profile(ProfileSpec::sine(0.1)), n), n);
}

void BM_Rhs(benchmark::State& state) {
  const LagrangianState s = initial(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rhs(s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rhs)->RangeMultiplier(2)->Range(64, 4096)->Complexity();

void BM_Rk4Step(benchmark::State& state) {
  LagrangianState s = initial(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) s = step(s, 5e-4, Scheme::rk4);
  benchmark::DoNotOptimize(s);
}
BENCHMARK(BM_Rk4Step)->RangeMultiplier(2)->Range(64, 4096);

void BM_Reconstruct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const LagrangianState s = initial(n);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(s, n));
}
BENCHMARK(BM_Reconstruct)->RangeMultiplier(2)->Range(64, 4096);

void BM_ReferenceRhs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const InitialData id = make_initial_data(Profile(ProfileSpec::sine(0.1)), n);
  const RefState r{0.0, id.u0, id.h};
  for (auto _ : state) benchmark::DoNotOptimize(ref_rhs(r));
}
BENCHMARK(BM_ReferenceRhs)->RangeMultiplier(2)->Range(64, 4096);

void BM_TraceBeta(benchmark::State& state) {
  const std::size_t n = 256;
  RunConfig cfg;
  cfg.n = n;
  cfg.t_end = 0.5;
  cfg.output_times = RunConfig::uniform_times(0.5, 101);
  const Trajectory traj = integrate(initial(n), cfg);
  const SourceTerms st = accumulate_sources(reconstruct_all(traj, n), traj.states.front().h);
  for (auto _ : state) benchmark::DoNotOptimize(trace_beta(st, 0.3, 1e-12));
}
BENCHMARK(BM_TraceBeta)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
