#include <benchmark/benchmark.h>

#include "diracwalk/dynamics.hpp"
#include "diracwalk/spectral.hpp"

using namespace diracwalk;

namespace {

void BM_BuildCoins(benchmark::State& state) {
  const CliffordRep rep = pauli_representation();
  const ModelParams p;
  for (auto _ : state) benchmark::DoNotOptimize(build_coins(rep, p));
}
BENCHMARK(BM_BuildCoins);

void BM_CheckUnitarity(benchmark::State& state) {
  const CoinSet coins = build_coins(pauli_representation(), ModelParams{});
  for (auto _ : state) benchmark::DoNotOptimize(check_unitarity(coins));
}
BENCHMARK(BM_CheckUnitarity);

void BM_WalkApply(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const WalkOperator u = build_walk_operator(build_coins(pauli_representation(), ModelParams{}), n);
  LatticeState psi = LatticeState::delta(n, n / 2, Vector::Unit(2, 0));
  for (auto _ : state) {
    psi = u.apply(psi);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WalkApply)->RangeMultiplier(8)->Range(64, 32768);

void BM_EvolveOneStep(benchmark::State& state) {
  const Eigen::Index n = 1024;
  const WalkOperator u = build_walk_operator(build_coins(pauli_representation(), ModelParams{}), n);
  const LatticeState psi = LatticeState::delta(n, n / 2, Vector::Unit(2, 0));
  const auto steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evolve_one_step(u, psi, steps));
}
BENCHMARK(BM_EvolveOneStep)->Arg(100)->Arg(1000);

void BM_WavePacket(benchmark::State& state) {
  const CoinSet coins = build_coins(pauli_representation(), ModelParams{});
  WavePacket packet;
  packet.center_k = 5.0;
  const auto n = static_cast<Eigen::Index>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(make_wave_packet(coins, n, packet));
}
BENCHMARK(BM_WavePacket)->Arg(256)->Arg(2048);

void BM_DispersionCurve(benchmark::State& state) {
  const ModelParams p;
  for (auto _ : state) benchmark::DoNotOptimize(dispersion_curve(ModelTag::dqw(), p, 1001));
}
BENCHMARK(BM_DispersionCurve);

void BM_SymbolDispersionCurve(benchmark::State& state) {
  const CliffordRep rep = pauli_representation();
  const ModelParams p;
  for (auto _ : state) benchmark::DoNotOptimize(symbol_dispersion_curve(ModelTag::dqw(), rep, p, 1001));
}
BENCHMARK(BM_SymbolDispersionCurve);

void BM_DoublingReport(benchmark::State& state) {
  const ModelParams p;
  for (auto _ : state) benchmark::DoNotOptimize(doubling_report(ModelTag::naive(), p, 1001));
}
BENCHMARK(BM_DoublingReport);

void BM_ConvergenceStudy(benchmark::State& state) {
  const ModelParams p;
  const std::vector<double> eps{0.1, 0.03, 0.01, 0.003, 0.001};
  for (auto _ : state) benchmark::DoNotOptimize(convergence_study(ModelTag::dqw(), p, eps));
}
BENCHMARK(BM_ConvergenceStudy);

}  // namespace

BENCHMARK_MAIN();
