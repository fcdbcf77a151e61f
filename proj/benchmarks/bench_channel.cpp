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

#include "qftv/closeness.hpp"
#include "qftv/noise.hpp"
#include "qftv/verify.hpp"

namespace qftv {
namespace {

void BM_S3KrausTrace(benchmark::State &state) {
    KrausChannel c = make_mixed_unitary(0.2, 3, static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(s3_kraus_trace(c));
}
BENCHMARK(BM_S3KrausTrace)->DenseRange(2, 6);

void BM_S3DoubleAverage(benchmark::State &state) {
    KrausChannel c = make_mixed_unitary(0.2, 3, static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(s3_double_average(c));
}
BENCHMARK(BM_S3DoubleAverage)->DenseRange(2, 5);

void BM_ClosenessReport(benchmark::State &state) {
    KrausChannel c = make_depolarized(0.1, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(closeness_report(c).s3);
}
BENCHMARK(BM_ClosenessReport)->DenseRange(2, 4);

void BM_ChannelPower(benchmark::State &state) {
    KrausChannel c = make_mixed_unitary(0.2, 3, static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(channel_power(c, 3).dim());
}
BENCHMARK(BM_ChannelPower)->DenseRange(2, 4);

void BM_Ta1Shots(benchmark::State &state) {
    KrausChannel c = make_depolarized(0.3, static_cast<int>(state.range(0)));
    ShotPlan plan = ShotPlan::calibrated(0.05, 0.05);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_ta1(c, plan, ++seed, 0.2).estimate);
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(plan.shots));
}
BENCHMARK(BM_Ta1Shots)->DenseRange(2, 4);

}  // namespace
}  // namespace qftv
