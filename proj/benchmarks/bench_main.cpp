#include <benchmark/benchmark.h>

#include <numbers>

#include "ctsim/cluster.hpp"
#include "ctsim/protocol.hpp"
#include "ctsim/sweep.hpp"

namespace {

using namespace ctsim;

void BM_SitePropagator(benchmark::State& state) {
  const SiteSpace space(LevelScheme::five_level(), 1);
  const Protocol p = five_level_transfer_protocol(1.2, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(protocol_propagator(p, RunMode::ideal(), space));
  }
}
BENCHMARK(BM_SitePropagator);

void BM_DissipativeRun(benchmark::State& state) {
  const SiteSpace space(LevelScheme::five_level(), 1);
  const Protocol p = five_level_transfer_protocol(1.2, 1.0);
  StateVector psi0 = StateVector::Zero(space.dim());
  psi0(space.index(Level::g, 0, 0)) = 1.0 / std::numbers::sqrt2;
  psi0(space.index(Level::g_prime, 0, 0)) = 1.0 / std::numbers::sqrt2;
  const RunMode mode = RunMode::dissipative({0.05, 0.05, 1.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_protocol(psi0, p, mode, space));
  }
}
BENCHMARK(BM_DissipativeRun);

void BM_RegisterTransfer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Protocol p = five_level_transfer_protocol(1.2, 1.0);
  const StateVector cluster = graph_cluster_state(Graph::chain(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(transfer_register(cluster, n, p));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_RegisterTransfer)->Arg(1)->Arg(2)->Arg(3);

void BM_SweepPoint(benchmark::State& state) {
  StateVector plus(2);
  plus << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(transfer_fidelity(plus, {0.05, 0.05, 1.2}, false));
  }
}
BENCHMARK(BM_SweepPoint);

void BM_MbqcDemo(benchmark::State& state) {
  const std::array<double, 3> angles{0.4, 0.5, 0.6};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mbqc_rotation_demo(angles, 7));
  }
}
BENCHMARK(BM_MbqcDemo);

}  // namespace

BENCHMARK_MAIN();
