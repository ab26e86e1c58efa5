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

#include <benchmark/benchmark.h>

#include "pfsim/dynamics.hpp"
#include "pfsim/experiment.hpp"

namespace {

void BM_EvolveSubspace(benchmark::State& state) {
    const int lambda = static_cast<int>(state.range(0));
    const pfsim::PFSubspace s = pfsim::build_subspace(lambda, pfsim::derive({}));
    const pfsim::TimeGrid grid{0.0, 2.0 * pfsim::predicted_revival_time(lambda, 1e-3), 4000};
    for (auto _ : state) {
        benchmark::DoNotOptimize(pfsim::evolve_subspace(s, s.lowest(), grid));
    }
}
BENCHMARK(BM_EvolveSubspace)->Arg(5)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_ClosedForm(benchmark::State& state) {
    const int lambda = static_cast<int>(state.range(0));
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pfsim::closed_form_psi(lambda, 1e-3, t));
        t += 17.0;
    }
}
BENCHMARK(BM_ClosedForm)->Arg(3)->Arg(10);

void BM_EvolveFullFig5(benchmark::State& state) {
    const pfsim::ExperimentConfig cfg = pfsim::preset("fig5");
    for (auto _ : state) {
        benchmark::DoNotOptimize(pfsim::simulate(cfg));
    }
}
BENCHMARK(BM_EvolveFullFig5)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace
