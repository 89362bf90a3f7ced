// Copyright 2026 The expdiff Authors. All Rights Reserved.
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

// Serial reference vs OpenMP kernels. Arg is the number of sample pairs (scan)
// or the corpus range (sweep).

#include <benchmark/benchmark.h>

#include "expdiff/kernels.hpp"
#include "expdiff/oracle.hpp"

namespace {

using namespace expdiff;

const BilinearForm& bench_form() {
  static const BilinearForm m = BilinearForm::outer(Field::Real, Vector{1, -2, Scalar::rational(1, 3), 4});
  return m;
}

template <bool Parallel>
void BM_ScanResiduals(benchmark::State& state) {
  const auto& m = bench_form();
  const Candidate f = AffineCandidate{Vector{1, -2, Scalar::rational(1, 3), 4}};
  const auto pairs = draw_samples(4, Field::Real, true, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    auto r = Parallel ? kernels::scan_residuals_parallel(f, m, pairs, kDefaultTol)
                      : kernels::scan_residuals_serial(f, m, pairs, kDefaultTol);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Sweep(benchmark::State& state) {
  const auto corpus = oracle::symmetric_corpus(Field::Real, 2, static_cast<int>(state.range(0)));
  oracle::SweepOptions opts;
  opts.parallel = Parallel;
  for (auto _ : state) {
    auto r = oracle::sweep(corpus, opts);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(corpus.size()));
}

}  // namespace

BENCHMARK(BM_ScanResiduals<false>)->Arg(1000)->Arg(10000);
BENCHMARK(BM_ScanResiduals<true>)->Arg(1000)->Arg(10000);
BENCHMARK(BM_Sweep<false>)->Arg(1)->Arg(2);
BENCHMARK(BM_Sweep<true>)->Arg(1)->Arg(2);

BENCHMARK_MAIN();
