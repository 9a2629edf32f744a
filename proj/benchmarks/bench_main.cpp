#include <benchmark/benchmark.h>

#include "armour/armour_loss.hpp"
#include "armour/design.hpp"
#include "armour/runner.hpp"
#include "armour/specialfn.hpp"

namespace {

armour::ArmourSpec table_armour(int N, double pitch) {
  armour::ArmourSpec s;
  s.wire_count = N;
  s.wire_radius = 0.0025;
  s.mean_radius = 0.1156;
  s.pitch = pitch;
  s.conductivity = 5.3763e6;
  s.mu_r = {600.0, -350.0};
  s.omega = 314.16;
  return s;
}

const armour::CoreLayout kLayout{0.05225, 2.4, 1000.0, 314.16, armour::PhaseSequence::positive};

void BM_BesselIComplex(benchmark::State& state) {
  const armour::cplx z(2.1, 2.1);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(armour::specialfn::bessel_i(m, z));
  }
}
BENCHMARK(BM_BesselIComplex)->Arg(1)->Arg(17)->Arg(40);

void BM_BesselKSequence(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(armour::specialfn::bessel_k_sequence(30, 9.1));
  }
}
BENCHMARK(BM_BesselKSequence);

void BM_FieldHz(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(armour::field_hz(kLayout, 0.1156, 0.3, 0.1, 30));
  }
}
BENCHMARK(BM_FieldHz);

void BM_Geometry(benchmark::State& state) {
  const auto spec = table_armour(135, -2.4);
  const armour::TransverseOptions opt{static_cast<int>(state.range(0)),
                                      armour::CouplingModel::along_field};
  for (auto _ : state) {
    benchmark::DoNotOptimize(armour::geometry(spec, opt));
  }
}
BENCHMARK(BM_Geometry)->Arg(1)->Arg(17)->Arg(64);

void BM_ArmourLoss(benchmark::State& state) {
  const auto tube = armour::geometry(table_armour(135, -2.4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(armour::armour_loss(kLayout, tube, 30));
  }
}
BENCHMARK(BM_ArmourLoss);

void BM_SweepN(benchmark::State& state) {
  armour::CableDesign d;
  d.layout = kLayout;
  d.armour = table_armour(135, -2.4);
  armour::SweepSpec spec;
  spec.parameter = armour::SweepParameter::wire_count;
  spec.values = armour::parse_sweep_values(spec.parameter, "25:135:1");
  armour::SweepOptions opt;
  opt.both_truncations = true;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(armour::run_sweep(d, spec, opt));
  }
}
BENCHMARK(BM_SweepN)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
