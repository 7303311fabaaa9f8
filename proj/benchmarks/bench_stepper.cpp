#include <benchmark/benchmark.h>

#include <array>
#include <cstdint>

#include "kleinfdtd/grid.hpp"
#include "kleinfdtd/observables.hpp"
#include "kleinfdtd/potentials.hpp"
#include "kleinfdtd/stepper.hpp"
#include "kleinfdtd/wavepacket.hpp"

using namespace kleinfdtd;

namespace {

Grid square_grid(std::int64_t nx, std::int64_t nz) {
  const std::array<std::int64_t, 2> n{nx, nz};
  const std::array<double, 2> origin{-0.005 * nx / 2, -0.005 * nz / 2};
  return make_grid(2, n, 0.005, origin);
}

PacketSpec packet() {
  PacketSpec s;
  s.p = {36.69, 0.0, 0.0};
  s.x0 = 0.259;
  s.center = {-0.5, 0.0, 0.0};
  return s;
}

}  // namespace

static void BM_Step2D(benchmark::State& state) {
  const Grid g = square_grid(state.range(0), state.range(0) / 2);
  const auto profile = sample_step(g, {48.92, 0.0});
  const auto cfg = StepperConfig::for_grid(g, 0.4, {});
  const Stepper stepper(profile, cfg);
  SpinorField f = init_packet(g, packet(), cfg.dt, &profile);
  for (auto _ : state) {
    stepper.step(f);
    benchmark::DoNotOptimize(f.component(0).data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.cell_count()));
}
BENCHMARK(BM_Step2D)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_Step1D(benchmark::State& state) {
  const std::array<std::int64_t, 1> n{state.range(0)};
  const std::array<double, 1> origin{-0.05 * state.range(0) / 2};
  const Grid g = make_grid(1, n, 0.05, origin);
  const auto profile = sample_step(g, {1.957, 0.0});
  const auto cfg = StepperConfig::for_grid(g, 0.4, {});
  const Stepper stepper(profile, cfg);
  PacketSpec s;
  s.p = {0.367, 0.0, 0.0};
  s.x0 = 2.59;
  s.center = {-30.0, 0.0, 0.0};
  SpinorField f = init_packet(g, s, cfg.dt, &profile);
  for (auto _ : state) {
    stepper.step(f);
    benchmark::DoNotOptimize(f.component(0).data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Step1D)->Arg(4096)->Arg(16384);

static void BM_Density2D(benchmark::State& state) {
  const Grid g = square_grid(state.range(0), state.range(0) / 2);
  const auto cfg = StepperConfig::for_grid(g, 0.4, {});
  SpinorField f = init_packet(g, packet(), cfg.dt, nullptr);
  for (auto _ : state) {
    auto rho = density(f);
    benchmark::DoNotOptimize(rho.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.cell_count()));
}
BENCHMARK(BM_Density2D)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_ObserveSample2D(benchmark::State& state) {
  const Grid g = square_grid(state.range(0), state.range(0) / 2);
  const auto cfg = StepperConfig::for_grid(g, 0.4, {});
  SpinorField f = init_packet(g, packet(), cfg.dt, nullptr);
  ObserveOptions opts;
  opts.plane_x = 0.0;
  opts.band_halfwidth = 0.5;
  for (auto _ : state) {
    auto s = observe(f, opts);
    benchmark::DoNotOptimize(s.norm);
  }
}
BENCHMARK(BM_ObserveSample2D)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
