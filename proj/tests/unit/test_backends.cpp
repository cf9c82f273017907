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
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <thread>

#include "ministack/backends/profile.hpp"
#include "ministack/backends/simulator.hpp"
#include "ministack/backends/statevector.hpp"
#include "ministack/backends/telemetry.hpp"
#include "ministack/circuit/lowlevel.hpp"
#include "ministack/circuit/qasm.hpp"
#include "ministack/circuit/unitary.hpp"
#include "ministack/compiler/pipeline.hpp"
#include "ministack/error.hpp"
#include "oracles.hpp"

namespace ministack {
namespace {

using namespace std::chrono_literals;
using backends::DeviceProfile;
using backends::SimulatorDevice;
using circuit::make_measure;
using circuit::make_op;
using circuit::QuantumCircuit;

constexpr double kPi = std::numbers::pi;

DeviceProfile profile(const std::string& id) {
    for (auto& p : backends::builtin_profiles()) {
        if (p.properties.device_id == id) return p;
    }
    throw std::runtime_error("no profile " + id);
}

std::string compiled_program(const std::string& source, const DeviceProfile& p) {
    const auto snap = backends::generate_telemetry(p, 0);
    return compiler::compile(circuit::parse_circuit(source), p.properties, snap).program;
}

const char* kBell = "OPENQASM 2.0;\nqreg q[2]; creg c[2]; h q[0]; cx q[0],q[1]; measure q[0] -> c[0]; measure q[1] -> c[1];";
const char* kGhz3 =
    "OPENQASM 2.0;\nqreg q[3]; creg c[3]; h q[0]; cx q[0],q[1]; cx q[1],q[2];"
    "measure q[0] -> c[0]; measure q[1] -> c[1]; measure q[2] -> c[2];";

// --- execution --------------------------------------------------------------

TEST(Simulator, BellStatistics) {
    for (const auto& id : {"sc20", "ion5"}) {
        SimulatorDevice dev(profile(id));
        CancelToken cancel;
        const auto counts = dev.execute(compiled_program(kBell, dev.profile()), 10000, 42, cancel);
        EXPECT_EQ(counts.shots_total, 10000u);
        EXPECT_EQ(counts.sum(), 10000u);
        for (const auto& [k, n] : counts.counts) EXPECT_TRUE(k == "00" || k == "11") << id << " " << k;
        for (const auto* k : {"00", "11"}) {
            ASSERT_TRUE(counts.counts.contains(k));
            EXPECT_GE(counts.counts.at(k), 4800u);
            EXPECT_LE(counts.counts.at(k), 5200u);
        }
    }
}

TEST(Simulator, XThenMeasure) {
    QuantumCircuit c(1, 1, circuit::Level::Native);
    c.append(make_op("prx", {0}, {kPi, 0}));
    c.append(make_measure(0, 0));
    const auto counts = backends::simulate(c, 5, 1);
    EXPECT_EQ(counts.counts, (std::map<std::string, std::uint64_t>{{"1", 5}}));
}

TEST(Simulator, Ghz3) {
    SimulatorDevice dev(profile("sc20"));
    CancelToken cancel;
    const auto counts = dev.execute(compiled_program(kGhz3, dev.profile()), 8192, 9, cancel);
    EXPECT_EQ(counts.sum(), 8192u);
    for (const auto& [k, n] : counts.counts) EXPECT_TRUE(k == "000" || k == "111") << k;
}

TEST(Simulator, ClbitOrderIsRightmostFirst) {
    QuantumCircuit c(3, 3, circuit::Level::Native);
    c.append(make_op("prx", {2}, {kPi, 0}));
    for (int q = 0; q < 3; ++q) c.append(make_measure(q, q));
    EXPECT_EQ(backends::simulate(c, 3, 1).counts.begin()->first, "100");
}

TEST(Simulator, Determinism) {
    SimulatorDevice dev(profile("ion5"));
    CancelToken cancel;
    const auto program = compiled_program(kGhz3, dev.profile());
    const auto first = dev.execute(program, 1000, 77, cancel);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(dev.execute(program, 1000, 77, cancel), first);
    std::vector<Counts> parallel(4);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] {
            SimulatorDevice own(profile("ion5"));
            CancelToken c;
            parallel[t] = own.execute(program, 1000, 77, c);
        });
    }
    for (auto& t : threads) t.join();
    for (const auto& c : parallel) EXPECT_EQ(c, first);
    EXPECT_NE(dev.execute(program, 1000, 78, cancel), first);
}

TEST(Simulator, SamplingMatchesUnitaryOracle) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int trial = 0; trial < 5; ++trial) {
        QuantumCircuit u(3, 0, circuit::Level::Native);
        for (int i = 0; i < 20; ++i) {
            const int q = static_cast<int>(rng() % 3);
            if (rng() % 3 == 0) {
                u.append(make_op("cz", {q, (q + 1) % 3}));
            } else {
                u.append(make_op("prx", {q}, {angle(rng), angle(rng)}));
            }
        }
        const auto m = circuit::circuit_unitary(u);
        QuantumCircuit c = u;
        c = QuantumCircuit(3, 3, circuit::Level::Native);
        for (const auto& op : u.ops()) c.append(op);
        for (int q = 0; q < 3; ++q) c.append(make_measure(q, q));

        const int shots = 100000;
        const auto counts = backends::simulate(c, shots, 1000 + trial);
        for (std::size_t x = 0; x < 8; ++x) {
            const double p = std::norm(m(x, 0));
            std::string key(3, '0');
            for (int q = 0; q < 3; ++q) {
                if (x >> q & 1) key[2 - q] = '1';
            }
            const double observed = counts.counts.contains(key) ? counts.counts.at(key) : 0.0;
            const double sigma = std::sqrt(shots * p * (1 - p));
            EXPECT_LE(std::abs(observed - shots * p), 3 * sigma + 1e-9) << "trial " << trial << " key " << key;
        }
    }
}

TEST(Simulator, ReadoutNoiseDegenerateConfusion) {
    backends::SimulatorOptions o;
    o.readout_noise = true;
    SimulatorDevice dev(profile("sc20"), o);
    dev.set_confusion_override(std::vector<std::pair<double, double>>(20, {1.0, 0.0}));
    CancelToken cancel;
    auto props = dev.static_properties();
    QuantumCircuit c(20, 2, circuit::Level::Native);
    c.append(make_op("prx", {0}, {kPi, 0}));
    c.append(make_op("prx", {1}, {kPi, 0}));
    c.append(make_measure(0, 0));
    c.append(make_measure(1, 1));
    c.set_native("sc20", circuit::Layout::identity(20), circuit::Layout::identity(20));
    const auto counts = dev.execute(circuit::emit_lowlevel(c), 500, 3, cancel);
    EXPECT_EQ(counts.counts, (std::map<std::string, std::uint64_t>{{"00", 500}}));
}

TEST(Simulator, ReadoutNoiseRate) {
    QuantumCircuit c(1, 1, circuit::Level::Native);
    c.append(make_measure(0, 0));
    const std::vector<std::pair<double, double>> confusion{{0.9, 0.8}};
    const auto counts = backends::simulate(c, 100000, 5, &confusion);
    const double flips = counts.counts.contains("1") ? counts.counts.at("1") : 0;
    EXPECT_NEAR(flips / 100000, 0.1, 3 * std::sqrt(0.09 / 100000));
}

TEST(Simulator, ValidationErrors) {
    QuantumCircuit c(1, 1, circuit::Level::Native);
    c.append(make_measure(0, 0));
    c.append(make_op("prx", {0}, {1, 0}));
    try {
        backends::simulate(c, 1, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Validation);
    }
    SimulatorDevice dev(profile("ion5"));
    CancelToken cancel;
    EXPECT_THROW(dev.execute("garbage", 1, 1, cancel), Error);
    const auto sc20_program = compiled_program(kBell, profile("sc20"));
    EXPECT_THROW(dev.execute(sc20_program, 1, 1, cancel), Error);
}

TEST(Simulator, TooManyTouchedQubits) {
    EXPECT_THROW(backends::Statevector(25), Error);
    QuantumCircuit wide(25, 0, circuit::Level::Native);
    for (int q = 0; q < 25; ++q) wide.append(make_op("prx", {q}, {1, 0}));
    try {
        backends::simulate(wide, 1, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Validation);
    }
}

TEST(Simulator, CancellationMidRun) {
    backends::SimulatorOptions o;
    o.min_execution_time = 5s;
    SimulatorDevice dev(profile("ion5"), o);
    CancelToken cancel;
    std::thread t([&] {
        std::this_thread::sleep_for(50ms);
        cancel.request();
    });
    const auto t0 = std::chrono::steady_clock::now();
    try {
        dev.execute(compiled_program(kBell, dev.profile()), 100, 1, cancel);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Cancelled);
    }
    t.join();
    EXPECT_LT(std::chrono::steady_clock::now() - t0, 2s);
}

TEST(Simulator, FailureInjection) {
    backends::SimulatorOptions o;
    o.failure_rate = 0.2;
    o.failure_seed = 4;
    SimulatorDevice dev(profile("ion5"), o);
    CancelToken cancel;
    const auto program = compiled_program(kBell, dev.profile());
    int failures = 0;
    for (int i = 0; i < 1000; ++i) {
        try {
            dev.execute(program, 1, 1, cancel);
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::ExecutionFailed);
            ++failures;
        }
    }
    EXPECT_EQ(static_cast<std::uint64_t>(failures), dev.injected_failures());
    EXPECT_NEAR(failures / 1000.0, 0.2, 4 * std::sqrt(0.16 / 1000));
}

TEST(Statevector, NormPreservedOnEightQubits) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        auto c = testing::random_generic_circuit(rng, {8, 8, 200, false});
        backends::Statevector sv(8);
        for (const auto& op : c.ops()) {
            sv.apply(op);
            ASSERT_NEAR(sv.norm(), 1.0, 1e-9);
        }
    }
}

TEST(Statevector, SamplingEdgeCases) {
    std::mt19937_64 rng(1);
    const auto idx = backends::sample_indices({0.0, 1.0, 0.0}, 100, rng);
    for (auto i : idx) EXPECT_EQ(i, 1u);
    const auto tail = backends::sample_indices({0.5, 0.5, 0.0, 0.0}, 1000, rng);
    for (auto i : tail) EXPECT_LT(i, 2u);
}

// --- telemetry -----------------------------------------------------------------

TEST(Telemetry, IdenticalWithinRefreshInterval) {
    const auto p = profile("sc20");
    const double start = 1.7e9;  // a bucket boundary for the 10 s interval
    const auto a = backends::generate_telemetry(p, start + 0.5);
    auto b = backends::generate_telemetry(p, start + 9.9);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, backends::generate_telemetry(p, start + 10.0));
}

TEST(Telemetry, NoDriftNoNoiseIsBase) {
    auto p = profile("ion5");
    p.telemetry.drift_amplitude = 0;
    p.telemetry.noise_sigma = 0;
    for (double t : {0.0, 1234.5, 9.9e8, 1.7e9}) {
        const auto s = backends::generate_telemetry(p, t);
        for (const auto& [key, f] : s.gate_fidelity) EXPECT_EQ(f, p.telemetry.base_fidelities.at(key.gate));
        for (double r : s.readout_fidelity) EXPECT_EQ(r, p.telemetry.base_fidelities.at("readout"));
    }
}

TEST(Telemetry, SamplesStayInDriftBand) {
    for (const auto& id : {"sc20", "ion5"}) {
        const auto p = profile(id);
        const auto& m = p.telemetry;
        const double spread = m.drift_amplitude + 4 * m.noise_sigma;
        int samples = 0;
        for (int i = 0; samples < 1000; ++i) {
            const auto s = backends::generate_telemetry(p, 1.6e9 + 7919.0 * i);
            for (const auto& [key, f] : s.gate_fidelity) {
                const double base = m.base_fidelities.at(key.gate);
                EXPECT_GE(f, base - spread - 1e-15);
                EXPECT_LE(f, base + spread + 1e-15);
                ++samples;
            }
        }
    }
}

TEST(Telemetry, SnapshotInvariants) {
    for (const auto& id : {"sc20", "ion5"}) {
        const auto p = profile(id);
        for (int i = 0; i < 50; ++i) {
            const double t = 1.6e9 + 3333.3 * i;
            const auto s = backends::generate_telemetry(p, t);
            EXPECT_EQ(s.device_id, id);
            EXPECT_LE(s.calibrated_at, s.taken_at);
            EXPECT_LE(s.taken_at, t);
            ASSERT_EQ(s.t1.size(), static_cast<std::size_t>(p.properties.num_qubits));
            for (int q = 0; q < p.properties.num_qubits; ++q) {
                EXPECT_GT(s.t1[q], 0);
                EXPECT_LE(s.t2[q], 2 * s.t1[q]);
                EXPECT_GE(s.confusion[q].first, 0);
                EXPECT_LE(s.confusion[q].first, 1);
                EXPECT_GE(s.confusion[q].second, 0);
                EXPECT_LE(s.confusion[q].second, 1);
                EXPECT_NEAR((s.confusion[q].first + s.confusion[q].second) / 2, s.readout_fidelity[q], 1e-12);
            }
            // Every native gate on every qubit or edge.
            std::size_t expected = 0;
            for (const auto& [g, arity] : p.properties.native_gates) {
                if (g == "measure") continue;
                expected += arity == 1 ? p.properties.num_qubits : p.properties.coupling_map.size();
            }
            EXPECT_EQ(s.gate_fidelity.size(), expected);
        }
    }
}

TEST(Telemetry, KeyedGaussianIsStandardNormal) {
    double sum = 0, sq = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double z = backends::keyed_gaussian(1, "g", {i % 7}, i);
        EXPECT_LE(std::abs(z), 4.0);
        sum += z;
        sq += z * z;
    }
    EXPECT_NEAR(sum / n, 0, 4 / std::sqrt(n));
    EXPECT_NEAR(sq / n, 1, 0.05);
    EXPECT_EQ(backends::keyed_gaussian(3, "cz", {1, 2}, 5), backends::keyed_gaussian(3, "cz", {1, 2}, 5));
    EXPECT_NE(backends::keyed_gaussian(3, "cz", {1, 2}, 5), backends::keyed_gaussian(3, "cz", {1, 2}, 6));
}

TEST(Telemetry, EnvironmentOverrides) {
    SimulatorDevice dev(profile("sc20"));
    dev.set_temperature_override(80.0);
    dev.set_calibrated_at_override(12.0);
    const auto s = dev.telemetry(1.7e9);
    EXPECT_EQ(s.temperature_mk, 80.0);
    EXPECT_EQ(s.calibrated_at, 12.0);
    dev.set_temperature_override(std::nullopt);
    EXPECT_LT(dev.telemetry(1.7e9).temperature_mk, 60.0);
}

// --- profiles ------------------------------------------------------------------------

TEST(Profiles, Builtins) {
    const auto all = backends::builtin_profiles();
    ASSERT_EQ(all.size(), 2u);
    const auto& sc20 = all[0].properties;
    const auto& ion5 = all[1].properties;
    EXPECT_EQ(sc20.device_id, "sc20");
    EXPECT_EQ(sc20.num_qubits, 20);
    EXPECT_EQ(sc20.native_gates, (std::map<std::string, int>{{"prx", 1}, {"cz", 2}, {"measure", 1}}));
    EXPECT_EQ(ion5.device_id, "ion5");
    EXPECT_EQ(ion5.native_gates, (std::map<std::string, int>{{"rz", 1}, {"rx", 1}, {"rxx", 2}, {"measure", 1}}));
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) pairs.emplace_back(a, b);
    EXPECT_EQ(ion5.coupling_map, pairs);
    EXPECT_DOUBLE_EQ(sc20.duration("prx"), 40e-9);
    EXPECT_DOUBLE_EQ(sc20.duration("cz"), 80e-9);
    EXPECT_DOUBLE_EQ(ion5.duration("rxx"), 200e-6);
    EXPECT_DOUBLE_EQ(sc20.shot_overhead, 1e-3);
    EXPECT_DOUBLE_EQ(ion5.shot_overhead, 5e-3);
}

TEST(Profiles, Sc20IsAGrid) {
    const auto sc20 = profile("sc20").properties;
    EXPECT_EQ(sc20.coupling_map.size(), 31u);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 5; ++c) {
            const int q = 5 * r + c;
            if (c + 1 < 5) EXPECT_TRUE(sc20.has_edge(q, q + 1));
            if (r + 1 < 4) EXPECT_TRUE(sc20.has_edge(q, q + 5));
        }
    }
}

TEST(Profiles, ValidationRejectsUnsafeBase) {
    auto p = profile("sc20");
    p.telemetry.base_fidelities["cz"] = 0.999;
    p.telemetry.drift_amplitude = 0.01;
    EXPECT_THROW(p.validate(), Error);
    p = profile("sc20");
    p.telemetry.base_fidelities.erase("prx");
    EXPECT_THROW(p.validate(), Error);
}

TEST(Profiles, LoadFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "ministack_profile_test.json";
    auto p = profile("ion5");
    p.properties.device_id = "ion5b";
    p.properties.display_name = "copy";
    std::ofstream(path) << nlohmann::json(p).dump(2);
    const auto loaded = backends::load_profile(path);
    EXPECT_EQ(loaded.properties.device_id, "ion5b");
    EXPECT_EQ(loaded.properties.coupling_map, p.properties.coupling_map);
    std::ofstream(path) << "{";
    EXPECT_THROW(backends::load_profile(path), Error);
    std::filesystem::remove(path);
    EXPECT_THROW(backends::load_profile(path), Error);
}

}  // namespace
}  // namespace ministack
