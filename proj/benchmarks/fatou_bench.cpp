// Copyright 2026 The Fatou Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "fatou/diophantine.hpp"
#include "fatou/linearization.hpp"
#include "fatou/maps.hpp"
#include "fatou/series.hpp"

namespace fatou {
namespace {

const ComplexPoint2 kPoint{{-1.0 / 60.0, 0.001}, {0.5, 0.1}};

void BM_Rank1Fastpath(benchmark::State& state) {
  const AutoMap m = make_rank1();
  ComplexPoint2 p = kPoint;
  for (auto _ : state) benchmark::DoNotOptimize(p = m.eval_fastpath(kPoint));
}
BENCHMARK(BM_Rank1Fastpath);

void BM_Rank1Pipeline(benchmark::State& state) {
  const AutoMap m = make_rank1();
  for (auto _ : state) benchmark::DoNotOptimize(m.try_eval_pipeline(kPoint));
}
BENCHMARK(BM_Rank1Pipeline);

void BM_Rank0Fastpath(benchmark::State& state) {
  const AutoMap m = make_rank0(2);
  for (auto _ : state) benchmark::DoNotOptimize(m.eval_fastpath(kPoint));
}
BENCHMARK(BM_Rank0Fastpath);

Series2 bench_series(int order) {
  Series2 s(order);
  for (int d = 1; d <= order; ++d) {
    for (int l2 = 0; l2 <= d; ++l2) s.set(d - l2, l2, {1.0 / (d + l2), 0.5 / d});
  }
  return s;
}

void BM_SeriesMul(benchmark::State& state) {
  const Series2 a = bench_series(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a * a);
}
BENCHMARK(BM_SeriesMul)->Arg(8)->Arg(16)->Arg(32);

void BM_SeriesExp(benchmark::State& state) {
  const Series2 a = bench_series(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(series2_exp(a));
}
BENCHMARK(BM_SeriesExp)->Arg(8)->Arg(16)->Arg(32);

void BM_SolvePsi(benchmark::State& state) {
  const Complex lam = std::polar(1.0, kTwoPi * Theta::golden().to_double());
  const MapJet F = quadratic_test_jet(lam);
  LinearizationOptions opts;
  opts.precision = Precision::Double;
  for (auto _ : state) benchmark::DoNotOptimize(solve_psi(F, lam, static_cast<int>(state.range(0)), opts));
}
BENCHMARK(BM_SolvePsi)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace fatou

BENCHMARK_MAIN();
