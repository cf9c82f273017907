// Copyright 2026 The Ministack Authors
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

#include <random>
#include <string>
#include <vector>

#include "ministack/scheduler/queue.hpp"
#include "ministack/scheduler/select.hpp"

namespace {

using ministack::scheduler::DeviceCandidate;

std::vector<DeviceCandidate> candidates(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<DeviceCandidate> out;
    for (int i = 0; i < n; ++i) out.push_back({"dev" + std::to_string(i), 100 * u(rng), u(rng), 10 * u(rng), true});
    return out;
}

void BM_ParetoFront(benchmark::State& state) {
    const auto c = candidates(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(ministack::scheduler::pareto_front(c));
}
BENCHMARK(BM_ParetoFront)->RangeMultiplier(2)->Range(2, 64);

void BM_SelectDevice(benchmark::State& state) {
    const auto c = candidates(static_cast<int>(state.range(0)), 2);
    const ministack::scheduler::SchedulingPolicy policy;
    for (auto _ : state) benchmark::DoNotOptimize(ministack::scheduler::select_device(c, policy));
}
BENCHMARK(BM_SelectDevice)->RangeMultiplier(2)->Range(2, 64);

void BM_QueueChurn(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back("job" + std::to_string(i));
    for (auto _ : state) {
        ministack::scheduler::DeviceQueue q("bench");
        for (int i = 0; i < n; ++i) q.enqueue(ids[i], i % 10);
        while (q.try_next(0)) {
        }
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_QueueChurn)->RangeMultiplier(10)->Range(100, 100000);

}  // namespace

BENCHMARK_MAIN();
