#include <benchmark/benchmark.h>

#include "swclock/design.hpp"
#include "swclock/feasibility.hpp"
#include "swclock/wavepacket.hpp"

using namespace swclock;

namespace {

const PhysicalConstants kConstants = load_constants();

DesignInput micro_mass_input() {
  DesignInput in;
  in.mode = DialMode::maximal_dial;
  in.knowns = {{Field::tau, {1e-7, field_dimension(Field::tau)}},
               {Field::n, {1e7, field_dimension(Field::n)}}};
  return in;
}

void BM_CloseDesign(benchmark::State& state) {
  DesignInput in = micro_mass_input();
  for (auto _ : state) {
    benchmark::DoNotOptimize(close_design(in, kConstants));
  }
}
BENCHMARK(BM_CloseDesign);

void BM_Check(benchmark::State& state) {
  ClockDesign d = close_design(micro_mass_input(), kConstants);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check(d));
  }
}
BENCHMARK(BM_Check);

void BM_Sweep(benchmark::State& state) {
  SweepRequest req;
  req.axis1 = {Field::n, 10.0, 1e6, static_cast<int>(state.range(0))};
  req.axis2 = {Field::M, 1e-27, 1e-16, static_cast<int>(state.range(0))};
  req.density = DensityPolicy::nuclear();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(req, kConstants));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Sweep)->Arg(8)->Arg(32)->Arg(64);

void BM_PropagateGrid(benchmark::State& state) {
  int points = static_cast<int>(state.range(0));
  GaussianPacket p{0.0, 0.0, 1e-6, 1e-20, 0.0, WidthConvention::std_dev_hbar_half};
  double t0 = 2.0 * p.mass * p.sigma0 * p.sigma0 / kConstants.hbar;
  GridSpec spec{-32e-6, 32e-6, points};
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate_grid(p, spec, t0, kConstants));
  }
  state.SetItemsProcessed(state.iterations() * points);
}
BENCHMARK(BM_PropagateGrid)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);

void BM_ArrivalTime(benchmark::State& state) {
  ClockDesign d = close_design(micro_mass_input(), kConstants);
  std::uint64_t samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(arrival_time_spread(d, samples, 42));
  }
  state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_ArrivalTime)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
