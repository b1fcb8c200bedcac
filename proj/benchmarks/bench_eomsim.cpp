#include <benchmark/benchmark.h>

#include "eomsim/analysis.hpp"
#include "eomsim/dynamics.hpp"
#include "eomsim/steady_state.hpp"
#include "eomsim/synthesis.hpp"

using namespace eomsim;

namespace {

const DeviceParams& cavity() {
  static const DeviceParams p = validated(presets::rb87_cavity());
  return p;
}

const DeviceParams& waveform() {
  static const DeviceParams p = validated(presets::rb87_waveform());
  return p;
}

void BM_ChiSteady(benchmark::State& state) {
  const auto& p = cavity();
  const double n_c = photon_number(1.0, p);
  double dp = -1e8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi_steady(dp, n_c, p));
    dp += 1.0;
  }
}
BENCHMARK(BM_ChiSteady);

void BM_SpectrumSweep(benchmark::State& state) {
  const auto& p = cavity();
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto dp = linspace(-10.0 * p.medium.gamma, 10.0 * p.medium.gamma, 2 * n + 1);
  const auto u = linspace(0.0, 4.0, n);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_sweep(dp, u, p));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(dp.size() * u.size()));
}
BENCHMARK(BM_SpectrumSweep)->Arg(25)->Arg(101);

void BM_VoltageForAbsorption(benchmark::State& state) {
  const auto& p = cavity();
  const auto band = absorption_band(p);
  double a = band.a_min + 0.3 * band.width();
  for (auto _ : state) {
    benchmark::DoNotOptimize(voltage_for_absorption(a, p));
    a = a < 0.9 ? a + 1e-9 : band.a_min;
  }
}
BENCHMARK(BM_VoltageForAbsorption);

void BM_EitWidth(benchmark::State& state) {
  const auto& p = cavity();
  for (auto _ : state) benchmark::DoNotOptimize(eit_width(1.0, p));
}
BENCHMARK(BM_EitWidth);

void BM_StepBloch(benchmark::State& state) {
  const auto& p = cavity();
  SystemState s;
  const cplx a = cavity_amplitude(0.5, p);
  for (auto _ : state) {
    const auto c = step_bloch(s, a, 1e6, 1e-10, p);
    s.sigma_ba = c.sigma_ba;
    s.sigma_bc = c.sigma_bc;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_StepBloch);

void BM_Simulate(benchmark::State& state) {
  const auto& p = waveform();
  const auto wave = DriveWaveform::periodic(WaveKind::kSquare, 0.0, 25.0,
                                            200.0 / p.mech.gamma_m, 2.0);
  SolverConfig cfg;
  cfg.dt = suggested_time_step(p);
  cfg.method = state.range(0) == 0 ? Method::kExponentialPiecewise : Method::kRk4Adaptive;
  cfg.record_stride = 100;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(wave, p, cfg));
}
BENCHMARK(BM_Simulate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
