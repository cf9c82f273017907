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

#include "ministack/backends/simulator.hpp"
#include "ministack/backends/statevector.hpp"
#include "ministack/circuit/circuit.hpp"

namespace {

using ministack::circuit::make_measure;
using ministack::circuit::make_op;
using ministack::circuit::QuantumCircuit;

QuantumCircuit layered(int n, int layers) {
    QuantumCircuit c(n, n, ministack::circuit::Level::Native);
    for (int l = 0; l < layers; ++l) {
        for (int q = 0; q < n; ++q) c.append(make_op("prx", {q}, {0.3 + 0.1 * l, 0.2 * q}));
        for (int q = l % 2; q + 1 < n; q += 2) c.append(make_op("cz", {q, q + 1}));
    }
    return c;
}

void BM_ApplyLayers(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto c = layered(n, 10);
    for (auto _ : state) {
        ministack::backends::Statevector sv(n);
        for (const auto& op : c.ops()) sv.apply(op);
        benchmark::DoNotOptimize(sv.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.size()));
}
BENCHMARK(BM_ApplyLayers)->DenseRange(4, 20, 4);

void BM_SampleShots(benchmark::State& state) {
    auto c = layered(10, 4);
    for (int q = 0; q < 10; ++q) c.append(make_measure(q, q));
    const int shots = static_cast<int>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(ministack::backends::simulate(c, shots, ++seed));
    state.SetItemsProcessed(state.iterations() * shots);
}
BENCHMARK(BM_SampleShots)->RangeMultiplier(10)->Range(100, 100000);

}  // namespace

BENCHMARK_MAIN();
