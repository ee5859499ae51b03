// Serial reference loops against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "harmonic/harness.hpp"
#include "harmonic/kernels.hpp"

using namespace harmonic;

namespace {

SampledFunction cube(int count) {
  TestFunctionSpec s;
  return make_test_function(s, n_axes(3, -5.5, 5.5, count));
}

void BM_NFourier(benchmark::State& state, Execution exec) {
  const SampledFunction f = cube(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(n_fourier(f, -1, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}

void BM_ApplyAlongAxis(benchmark::State& state, bool reference) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CMatrix m = CMatrix::Random(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<cplx> in(n * n * n, cplx(1.0, 0.5)), out(n * n * n);
  for (auto _ : state) {
    if (reference) {
      kernels::reference::apply_along_axis(m, in, out, n, n);
    } else {
      kernels::apply_along_axis(m, in, out, n, n);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_SLFourier(benchmark::State& state, Execution exec) {
  const SLChart chart = make_sl_chart(2, {-10, 10, 128}, {-6, 6, 64}, 32, 15);
  const SampledFunction f = sample_on_chart(matrix_gaussian(1.0, 0.25), chart);
  for (auto _ : state) benchmark::DoNotOptimize(sl_fourier(f, chart, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_NFourier, serial, Execution::Serial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_NFourier, parallel, Execution::Parallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ApplyAlongAxis, reference, true)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ApplyAlongAxis, openmp, false)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SLFourier, serial, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SLFourier, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
