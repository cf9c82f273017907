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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ministack/backends/profile.hpp"
#include "ministack/backends/simulator.hpp"
#include "ministack/backends/telemetry.hpp"
#include "ministack/circuit/qasm.hpp"
#include "ministack/compiler/pipeline.hpp"
#include "ministack/error.hpp"
#include "ministack/fomac/fomac.hpp"
#include "ministack/qdmi/qdmi.hpp"
#include "oracles.hpp"

namespace ministack {
namespace {

using circuit::make_measure;
using circuit::make_op;
using circuit::QuantumCircuit;

TelemetrySnapshot sample_snapshot() {
    const auto dev = testing::line_device(3);
    auto s = testing::uniform_snapshot(dev, 0.99, 0.95);
    s.device_id = "line3";
    s.gate_fidelity[{"prx", {0}}] = 0.999;
    s.gate_fidelity[{"prx", {1}}] = 0.98;
    s.gate_fidelity[{"prx", {2}}] = 0.995;
    s.gate_fidelity[{"cz", {0, 1}}] = 0.97;
    s.gate_fidelity[{"cz", {1, 2}}] = 0.95;
    s.readout_fidelity = {0.96, 0.99, 0.90};
    s.temperature_mk = 14;
    s.calibrated_at = 1000;
    s.taken_at = 1500;
    return s;
}

TEST(Fomac, ClassAverages) {
    const auto r = fomac::aggregate(sample_snapshot(), 3, {}, 1500);
    EXPECT_NEAR(r.avg_1q_fidelity, (0.999 + 0.98 + 0.995) / 3, 1e-12);
    EXPECT_NEAR(r.avg_2q_fidelity, (0.97 + 0.95) / 2, 1e-12);
    EXPECT_NEAR(r.avg_readout_fidelity, (0.96 + 0.99 + 0.90) / 3, 1e-12);
    EXPECT_EQ(r.device_id, "line3");
    EXPECT_EQ(r.taken_at, 1500);
    EXPECT_TRUE(r.healthy);
    EXPECT_TRUE(r.health_reasons.empty());
}

TEST(Fomac, BestQubitRanking) {
    // quality = readout * mean 1q fidelity: q0 0.95904, q1 0.9702, q2 0.8955
    const auto r = fomac::aggregate(sample_snapshot(), 3, {}, 1500);
    EXPECT_EQ(r.best_qubit_ranking, (std::vector<int>{1, 0, 2}));
    auto tie = testing::uniform_snapshot(testing::line_device(4), 0.99, 0.95);
    EXPECT_EQ(fomac::aggregate(tie, 4, {}, 0).best_qubit_ranking, (std::vector<int>{0, 1, 2, 3}));
}

TEST(Fomac, HealthFlags) {
    auto s = sample_snapshot();
    fomac::HealthLimits limits{20, 3600};
    EXPECT_TRUE(fomac::environment_health(s, limits, 1000 + 3600).healthy);
    auto h = fomac::environment_health(s, limits, 1000 + 3601);
    EXPECT_FALSE(h.healthy);
    EXPECT_EQ(h.reasons, (std::vector<std::string>{"calibration_age"}));
    s.temperature_mk = 20.5;
    h = fomac::environment_health(s, limits, 1001);
    EXPECT_EQ(h.reasons, (std::vector<std::string>{"temperature"}));
    h = fomac::environment_health(s, limits, 1e9);
    EXPECT_EQ(h.reasons, (std::vector<std::string>{"temperature", "calibration_age"}));
    const auto r = fomac::aggregate(s, 3, limits, 1e9);
    EXPECT_FALSE(r.healthy);
    EXPECT_EQ(r.health_reasons.size(), 2u);
}

TEST(Fomac, HealthLimitsJson) {
    const auto l = nlohmann::json{{"max_temperature_mk", 30}}.get<fomac::HealthLimits>();
    EXPECT_EQ(l.max_temperature_mk, 30);
    EXPECT_EQ(l.max_calibration_age_s, 24 * 3600);
}

TEST(Fomac, AggregateThroughRegistry) {
    auto qdmi = std::make_shared<Qdmi>();
    auto sim = std::make_shared<backends::SimulatorDevice>(backends::builtin_profiles()[0]);
    qdmi->register_device(sim);
    auto r = fomac::aggregate(*qdmi, "sc20");
    EXPECT_TRUE(r.healthy);
    EXPECT_EQ(r.best_qubit_ranking.size(), 20u);
    sim->set_temperature_override(500);
    r = fomac::aggregate(*qdmi, "sc20");
    EXPECT_FALSE(r.healthy);
    EXPECT_EQ(r.health_reasons, (std::vector<std::string>{"temperature"}));
    EXPECT_THROW(fomac::aggregate(*qdmi, "nope"), Error);
}

// Product of per-op fidelities, computed without the class-mean fallback.
double reference_esp(const QuantumCircuit& native, const TelemetrySnapshot& s) {
    double p = 1;
    for (const auto& op : native.ops()) {
        if (op.is_barrier()) continue;
        if (op.is_measure()) {
            p *= s.readout_fidelity.at(op.qubits[0]);
        } else {
            auto q = op.qubits;
            auto it = s.gate_fidelity.find({op.name, q});
            if (it == s.gate_fidelity.end()) {
                std::swap(q[0], q[1]);
                it = s.gate_fidelity.find({op.name, q});
            }
            p *= it->second;
        }
    }
    return p;
}

QuantumCircuit random_native(std::mt19937_64& rng, int n, int ops) {
    QuantumCircuit c(n, n, circuit::Level::Native);
    for (int i = 0; i < ops; ++i) {
        const int q = static_cast<int>(rng() % n);
        if (n > 1 && rng() % 3 == 0) {
            const int a = std::min(q, n - 2);
            if (rng() % 2) {
                c.append(make_op("cz", {a, a + 1}));
            } else {
                c.append(make_op("cz", {a + 1, a}));
            }
        } else {
            c.append(make_op("prx", {q}, {0.3, 0.1}));
        }
    }
    for (int q = 0; q < n; ++q) c.append(make_measure(q, q));
    return c;
}

TEST(Esp, MatchesProductOracle) {
    std::mt19937_64 rng(3);
    const auto s = sample_snapshot();
    for (int i = 0; i < 200; ++i) {
        const auto c = random_native(rng, 3, 25);
        EXPECT_NEAR(fomac::estimate_success_probability(c, s), reference_esp(c, s), 1e-12);
    }
}

TEST(Esp, ExampleValue) {
    QuantumCircuit c(2, 2, circuit::Level::Native);
    c.append(make_op("prx", {0}, {1, 0}));
    c.append(make_op("cz", {1, 0}));
    c.append(make_measure(0, 0));
    c.append(make_measure(1, 1));
    EXPECT_NEAR(fomac::estimate_success_probability(c, sample_snapshot()), 0.999 * 0.97 * 0.96 * 0.99, 1e-15);
}

TEST(Esp, MonotoneInEveryFidelity) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.8, 1.0);
    int checked = 0;
    for (int pair = 0; pair < 1000; ++pair) {
        const auto c = random_native(rng, 3, 1 + static_cast<int>(rng() % 20));
        auto s = sample_snapshot();
        for (auto& [k, f] : s.gate_fidelity) f = u(rng);
        for (auto& r : s.readout_fidelity) r = u(rng);
        auto lower = s;
        // Lower one entry (gate or readout) and never see ESP go up.
        const std::size_t pick = rng() % (s.gate_fidelity.size() + s.readout_fidelity.size());
        if (pick < s.gate_fidelity.size()) {
            auto it = std::next(lower.gate_fidelity.begin(), static_cast<long>(pick));
            it->second *= u(rng);
        } else {
            lower.readout_fidelity[pick - s.gate_fidelity.size()] *= u(rng);
        }
        EXPECT_LE(fomac::estimate_success_probability(c, lower), fomac::estimate_success_probability(c, s) + 1e-15);
        ++checked;
    }
    EXPECT_EQ(checked, 1000);
}

TEST(Esp, RequiresNativeLevel) {
    QuantumCircuit c(1, 0);
    c.append(make_op("h", {0}));
    EXPECT_THROW(fomac::estimate_success_probability(c, sample_snapshot()), Error);
}

TEST(Esp, GenericEstimateUsesClassMeans) {
    const auto s = sample_snapshot();
    const double one = (0.999 + 0.98 + 0.995) / 3, two = (0.97 + 0.95) / 2, ro = (0.96 + 0.99 + 0.90) / 3;
    QuantumCircuit c(2, 2);
    c.append(make_op("h", {0}));
    c.append(make_op("cx", {0, 1}));
    c.append(make_op("swap", {0, 1}));
    c.append(make_op("id", {1}));
    c.append(make_measure(0, 0));
    EXPECT_NEAR(fomac::estimate_generic_success_probability(c, s), one * two * two * two * two * ro, 1e-12);
}

TEST(Esp, CompiledBellOnSimulatorIsPlausible) {
    const auto profile = backends::builtin_profiles()[0];
    const auto snap = backends::generate_telemetry(profile, 1.7e9);
    const auto res = compiler::compile(
        circuit::parse_circuit("OPENQASM 2.0;\nqreg q[2]; creg c[2]; h q[0]; cx q[0],q[1]; measure q -> c;"),
        profile.properties, snap);
    const double esp = fomac::estimate_success_probability(res.native, snap);
    EXPECT_GT(esp, 0.8);
    EXPECT_LT(esp, 1.0);
    EXPECT_NEAR(esp, reference_esp(res.native, snap), 1e-12);
}

}  // namespace
}  // namespace ministack
