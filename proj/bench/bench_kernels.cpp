// Serial reference kernels against their OpenMP versions.  Set
// OMP_NUM_THREADS to choose the thread count.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sheetwave/curve.hpp"
#include "sheetwave/jacobian.hpp"
#include "sheetwave/kernels.hpp"
#include "sheetwave/wave_system.hpp"

namespace {

using namespace sheetwave;

struct Sample {
  CurveGeometry geometry;
  std::vector<double> gamma;
};

Sample make_sample(int n) {
  const Grid g(n);
  const std::vector<double> a{0.6, -0.2, 0.1};
  const CurveGeometry geo = renormalize_curve(from_sine_series(g, a), 2 * std::numbers::pi);
  std::vector<double> gamma(n);
  for (int j = 0; j < n; ++j) gamma[j] = 0.5 + 0.3 * std::cos(g.node(j));
  return {geo, gamma};
}

void BM_BirkhoffRottSerial(benchmark::State& state) {
  const Sample s = make_sample(int(state.range(0)));
  std::vector<kernels::complex> out(s.gamma.size());
  for (auto _ : state) {
    kernels::birkhoff_rott_sum_serial(s.geometry.z.values, s.gamma, s.geometry.period, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_BirkhoffRottParallel(benchmark::State& state) {
  const Sample s = make_sample(int(state.range(0)));
  std::vector<kernels::complex> out(s.gamma.size());
  for (auto _ : state) {
    kernels::birkhoff_rott_sum(s.geometry.z.values, s.gamma, s.geometry.period, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_ChordArcSerial(benchmark::State& state) {
  const Sample s = make_sample(int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::chord_arc_min_serial(
        s.geometry.z.values, s.geometry.dz.values, s.geometry.period));
  }
}

void BM_ChordArcParallel(benchmark::State& state) {
  const Sample s = make_sample(int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::chord_arc_min(s.geometry.z.values, s.geometry.dz.values, s.geometry.period));
  }
}

void fd_jacobian_bench(benchmark::State& state, bool parallel) {
  const Grid g(int(state.range(0)));
  const PhysicalParameters p{1.0, 2 * std::numbers::pi, 1.0, 0.5, 0.3};
  const std::vector<double> a{0.05, 0.02};
  const WaveState at{from_sine_series(g, a), from_cosine_series(g, a), 1.0};
  const SymmetricBasis basis(g);
  JacobianOptions options;
  options.parallel = parallel;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fd_jacobian(basis, at, p, options).data());
  }
}

void BM_FdJacobianSerial(benchmark::State& state) { fd_jacobian_bench(state, false); }
void BM_FdJacobianParallel(benchmark::State& state) { fd_jacobian_bench(state, true); }

}  // namespace

BENCHMARK(BM_BirkhoffRottSerial)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_BirkhoffRottParallel)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_ChordArcSerial)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_ChordArcParallel)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_FdJacobianSerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FdJacobianParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
