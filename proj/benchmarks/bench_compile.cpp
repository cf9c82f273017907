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

#include "ministack/backends/profile.hpp"
#include "ministack/backends/telemetry.hpp"
#include "ministack/circuit/circuit.hpp"
#include "ministack/circuit/gate.hpp"
#include "ministack/compiler/pipeline.hpp"

namespace {

using ministack::circuit::QuantumCircuit;

QuantumCircuit random_circuit(int n, int ops, std::uint64_t seed) {
    static const std::vector<std::string> one = {"h", "x", "s", "t", "rx", "rz"};
    std::mt19937_64 rng(seed);
    QuantumCircuit c(n, n);
    for (int i = 0; i < ops; ++i) {
        const int a = static_cast<int>(rng() % n);
        if (rng() % 3 == 0) {
            int b = static_cast<int>(rng() % (n - 1));
            if (b >= a) ++b;
            c.append(ministack::circuit::make_op("cx", {a, b}));
        } else {
            const auto& g = one[rng() % one.size()];
            c.append(ministack::circuit::make_op(g, {a}, g[0] == 'r' ? std::vector<double>{0.7} : std::vector<double>{}));
        }
    }
    for (int q = 0; q < n; ++q) c.append(ministack::circuit::make_measure(q, q));
    return c;
}

void BM_Compile(benchmark::State& state, int profile_index) {
    const auto profile = ministack::backends::builtin_profiles()[profile_index];
    const auto snap = ministack::backends::generate_telemetry(profile, 1.7e9);
    const int n = std::min(static_cast<int>(state.range(0)), profile.properties.num_qubits);
    const auto c = random_circuit(n, static_cast<int>(state.range(1)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(ministack::compiler::compile(c, profile.properties, snap));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.size()));
}
BENCHMARK_CAPTURE(BM_Compile, sc20, 0)->ArgsProduct({{5, 10, 20}, {50, 200}});
BENCHMARK_CAPTURE(BM_Compile, ion5, 1)->ArgsProduct({{5}, {50, 200}});

}  // namespace

BENCHMARK_MAIN();
