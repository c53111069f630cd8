#include <benchmark/benchmark.h>

#include "thermoforms/domains.hpp"
#include "thermoforms/forms.hpp"
#include "thermoforms/processes.hpp"

using namespace thermoforms;

static void BM_JetMultiply(benchmark::State& state) {
  const Jet4 a = log(Jet4::variable(Axis::e, 1.3)) + Jet4::variable(Axis::v, 0.7);
  const Jet4 b = pow(Jet4::variable(Axis::v, 2.1), 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMultiply);

static void BM_JetDivide(benchmark::State& state) {
  const Jet4 a = Jet4::variable(Axis::e, 1.3) * Jet4::variable(Axis::v, 0.7);
  const Jet4 b = 3.0 + Jet4::variable(Axis::v, 2.1);
  for (auto _ : state) benchmark::DoNotOptimize(a / b);
}
BENCHMARK(BM_JetDivide);

static void BM_EntropyJet(benchmark::State& state) {
  const auto model = state.range(0) == 0 ? EntropyModel::ideal_gas(3.0)
                                         : EntropyModel::van_der_waals(3.0);
  for (auto _ : state) benchmark::DoNotOptimize(model.derivatives(1.2, 2.0));
}
BENCHMARK(BM_EntropyJet)->Arg(0)->Arg(1);

static void BM_Sigma4(benchmark::State& state) {
  const auto model = EntropyModel::van_der_waals(3.0);
  for (auto _ : state) benchmark::DoNotOptimize(sigma4(model, 1.2, 2.0));
}
BENCHMARK(BM_Sigma4);

static void BM_SolveCubic(benchmark::State& state) {
  const CubicCoeffs c = cubic_at(EntropyModel::van_der_waals(3.0), 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_cubic(c));
}
BENCHMARK(BM_SolveCubic);

static void BM_ClassifyPoint(benchmark::State& state) {
  const auto model = EntropyModel::van_der_waals(3.0);
  for (auto _ : state) benchmark::DoNotOptimize(classify_point(model, 1.1, 1.5));
}
BENCHMARK(BM_ClassifyPoint);

static void BM_Scan(benchmark::State& state) {
  const auto model = EntropyModel::van_der_waals(3.0);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan(model, {0.2, 1.4, steps}, {0.4, 10.0, steps}, 1));
  }
  state.SetItemsProcessed(state.iterations() * steps * steps);
}
BENCHMARK(BM_Scan)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
