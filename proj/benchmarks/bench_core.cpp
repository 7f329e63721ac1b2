#include <benchmark/benchmark.h>

#include "rqd/discord.hpp"
#include "rqd/dynamics.hpp"
#include "rqd/entropy.hpp"
#include "rqd/states.hpp"

namespace {

using namespace rqd;

DensityMatrix fixture_state() {
  XStateParams p;
  p.a = 0.35;
  p.b = 0.15;
  p.c = 0.15;
  p.d = 0.35;
  p.delta = 0.25;
  p.beta_off = 0.1;
  return x_state(p);
}

DimerParams fixture_dimer() {
  DimerParams d;
  d.eps[0] = 20;
  d.eps[1] = 10;
  d.eps[2] = 22;
  d.eps[3] = 12;
  d.J1 = 10;
  d.J2 = 12;
  d.gamma[0] = 1.0;
  d.gamma[1] = 1.1;
  d.gamma[2] = 0.9;
  d.gamma[3] = 1.2;
  return d;
}

BathParams fixture_bath() {
  BathParams b;
  b.N1 = 20;
  b.N2 = 22;
  b.alpha1 = 250;
  b.alpha2 = 200;
  b.q = 30;
  b.T = 77;
  return b;
}

void BM_isometry_apply(benchmark::State& state) {
  auto rho = fixture_state();
  ProjectiveMeasurement m{1.1, 0.6};
  for (auto _ : state) {
    auto tau = isometry_apply(rho, m);
    benchmark::DoNotOptimize(tau.mat.data());
  }
}
BENCHMARK(BM_isometry_apply);

void BM_renyi_cmi(benchmark::State& state) {
  auto tau = isometry_apply(fixture_state(), ProjectiveMeasurement{1.1, 0.6});
  auto ord = discord_order(0.9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(renyi_cmi(tau, ord));
  }
}
BENCHMARK(BM_renyi_cmi);

void BM_vn_cmi(benchmark::State& state) {
  auto tau = isometry_apply(fixture_state(), ProjectiveMeasurement{1.1, 0.6});
  for (auto _ : state) {
    benchmark::DoNotOptimize(vn_cmi(tau));
  }
}
BENCHMARK(BM_vn_cmi);

void BM_renyi_discord(benchmark::State& state) {
  auto rho = fixture_state();
  auto ord = discord_order(0.9);
  OptimizerSettings opt;
  opt.grid_theta = static_cast<int>(state.range(0));
  opt.grid_phi = static_cast<int>(2 * state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(renyi_discord(rho, ord, opt).value);
  }
}
BENCHMARK(BM_renyi_discord)->Arg(8)->Arg(16)->Arg(32)
    ->Unit(benchmark::kMillisecond);

void BM_vn_discord(benchmark::State& state) {
  auto rho = fixture_state();
  for (auto _ : state) {
    benchmark::DoNotOptimize(vn_discord(rho).value);
  }
}
BENCHMARK(BM_vn_discord)->Unit(benchmark::kMillisecond);

void BM_partition_function(benchmark::State& state) {
  auto b = fixture_bath();
  for (auto _ : state) {
    benchmark::DoNotOptimize(partition_function(b));
  }
}
BENCHMARK(BM_partition_function);

void BM_evolver_setup(benchmark::State& state) {
  auto d = fixture_dimer();
  auto b = fixture_bath();
  for (auto _ : state) {
    Evolver ev(d, b);
    benchmark::DoNotOptimize(ev.sectors().size());
  }
}
BENCHMARK(BM_evolver_setup)->Unit(benchmark::kMillisecond);

void BM_evolve_step(benchmark::State& state) {
  Evolver ev(fixture_dimer(), fixture_bath());
  auto rho = fixture_state();
  double t = 0.0;
  for (auto _ : state) {
    t += 0.1;
    benchmark::DoNotOptimize(ev.evolve(rho, t).mat.data());
  }
}
BENCHMARK(BM_evolve_step);

}  // namespace

BENCHMARK_MAIN();
