// Copyright 2026 The qftverify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qftv/hhl.hpp"
#include "qftv/noise.hpp"

namespace qftv {
namespace {

HHLInstance instance(int n, std::size_t d) {
    std::vector<double> spec;
    for (std::size_t i = 0; i < d; ++i) spec.push_back(static_cast<double>(i) / static_cast<double>(1 << n));
    PureState b = PureState::normalized(CVector::Ones(static_cast<Eigen::Index>(d)));
    return HHLInstance::from_spectrum(spec, b, {}, n, true, 3);
}

void BM_RunIdeal(benchmark::State &state) {
    HHLInstance inst = instance(static_cast<int>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(run_ideal(inst, 1).dim());
}
BENCHMARK(BM_RunIdeal)->DenseRange(2, 5);

void BM_RunNoisy(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    HHLInstance inst = instance(n, 4);
    KrausChannel c = make_depolarized(0.05, n);
    NoiseSpec ps;
    ps.n = n;
    KrausChannel p = make_p_channel(ps);
    for (auto _ : state) benchmark::DoNotOptimize(run_noisy(inst, 1, c, p).dim());
}
BENCHMARK(BM_RunNoisy)->DenseRange(2, 4);

void BM_EnsembleFidelity(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    HHLInstance inst = instance(n, 2);
    KrausChannel c = make_perturbed_unitary(0.05, n, 1);
    NoiseSpec ps;
    ps.n = n;
    KrausChannel p = make_p_channel(ps);
    for (auto _ : state) benchmark::DoNotOptimize(ensemble_fidelity(inst, c, p).mean);
}
BENCHMARK(BM_EnsembleFidelity)->DenseRange(2, 4);

}  // namespace
}  // namespace qftv

BENCHMARK_MAIN();
