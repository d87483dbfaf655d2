#include <benchmark/benchmark.h>

#include "abring/config.hpp"
#include "abring/partition.hpp"
#include "abring/sweep.hpp"
#include "abring/thermo.hpp"

namespace {

abring::SpectrumCoefficients phi50() {
  abring::RingParams p;
  p.flux_ratio = 50.0;
  return abring::relativistic_coefficients(p);
}

// Terms grow like (ln(1/tol) / beta)^2 / B, so each decade in beta costs 100x.
void BM_DirectSumLinearized(benchmark::State& state) {
  const auto c = phi50();
  const double beta = 1.0 / static_cast<double>(state.range(0));
  std::int64_t terms = 0;
  for (auto _ : state) {
    const auto r =
        abring::z1_direct([&](std::int64_t n) { return abring::linearized_level(c, n); }, beta, {});
    terms = r.terms_used;
    benchmark::DoNotOptimize(r.log_value);
  }
  state.counters["terms"] = static_cast<double>(terms);
  state.counters["ns_per_term"] = benchmark::Counter(
      static_cast<double>(terms) * static_cast<double>(state.iterations()),
      benchmark::Counter::kIsRate | benchmark::Counter::kInvert);
}
BENCHMARK(BM_DirectSumLinearized)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_EulerMaclaurin(benchmark::State& state) {
  const auto c = phi50();
  for (auto _ : state) benchmark::DoNotOptimize(abring::z1_euler_maclaurin(1e-3, c).log_value);
}
BENCHMARK(BM_EulerMaclaurin);

void BM_NumericThermoHighT(benchmark::State& state) {
  const auto c = phi50();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        abring::thermo_numeric([&](double b) { return abring::log_z1_high_t(b, c); }, 1e-3));
  }
}
BENCHMARK(BM_NumericThermoHighT);

void BM_SweepFig1(benchmark::State& state) {
  const auto config = abring::preset_config("fig1");
  for (auto _ : state) benchmark::DoNotOptimize(abring::run_sweep(config));
}
BENCHMARK(BM_SweepFig1)->Unit(benchmark::kMicrosecond);

void BM_SweepEulerMaclaurinNumeric(benchmark::State& state) {
  auto config = abring::preset_config("fig1");
  config.method = abring::PartitionMethod::EulerMaclaurin;
  config.flux_ratios = {50.0};
  for (auto _ : state) benchmark::DoNotOptimize(abring::run_sweep(config));
}
BENCHMARK(BM_SweepEulerMaclaurinNumeric)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
