// Copyright 2026 The pfsim Authors
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

#include <random>

#include <benchmark/benchmark.h>

#include "pfsim/fock.hpp"
#include "pfsim/models.hpp"
#include "pfsim/numerics.hpp"

namespace {

pfsim::ComplexMatrix random_hermitian(int n) {
    std::mt19937 rng(42);
    std::normal_distribution<double> d(0.0, 1.0);
    pfsim::ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(i, j) = pfsim::Complex(d(rng), d(rng));
        }
    }
    return 0.5 * (a + a.adjoint());
}

void BM_Eigh(benchmark::State& state) {
    const auto h = random_hermitian(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pfsim::eigh(h));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Eigh)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);

void BM_Propagator(benchmark::State& state) {
    const auto h = random_hermitian(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pfsim::propagator(h, 0.7));
    }
}
BENCHMARK(BM_Propagator)->Arg(32)->Arg(128);

void BM_BuildCcjc(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    const pfsim::FockSpace space({n, n, true});
    const pfsim::ModelParams p;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pfsim::build_ccjc(p, space));
    }
}
BENCHMARK(BM_BuildCcjc)->Arg(10)->Arg(25);

}  // namespace
