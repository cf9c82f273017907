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
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "ministack/circuit/lowlevel.hpp"
#include "ministack/circuit/qasm.hpp"
#include "ministack/error.hpp"
#include "oracles.hpp"

namespace ministack {
namespace {

using circuit::Level;
using circuit::make_measure;
using circuit::make_op;
using circuit::QuantumCircuit;

constexpr double kPi = std::numbers::pi;
constexpr const char* kHeader = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no exception";
    return ErrorCode::Io;
}

// --- parsing -------------------------------------------------------------

TEST(Parse, BellPreparation) {
    auto c = circuit::parse_circuit(std::string(kHeader) + "qreg q[2]; creg c[2]; h q[0]; cx q[0],q[1];");
    EXPECT_EQ(c.level(), Level::Generic);
    EXPECT_EQ(c.num_qubits(), 2);
    EXPECT_EQ(c.num_clbits(), 2);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c.ops()[0], make_op("h", {0}));
    EXPECT_EQ(c.ops()[1], make_op("cx", {0, 1}));
}

TEST(Parse, EmptyBody) {
    auto c = circuit::parse_circuit(std::string(kHeader) + "qreg q[1]; creg c[1];");
    EXPECT_EQ(c.num_qubits(), 1);
    EXPECT_TRUE(c.empty());
}

TEST(Parse, QubitOutOfRange) {
    EXPECT_EQ(code_of([] { circuit::parse_circuit(std::string(kHeader) + "qreg q[2];\nh q[3];"); }), ErrorCode::Index);
}

TEST(Parse, ReportsLineAndColumn) {
    try {
        circuit::parse_circuit(std::string(kHeader) + "qreg q[2];\nh q[0];\n  frob q[1];\n");
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedGate);
        EXPECT_EQ(e.line(), 5);
        EXPECT_EQ(e.column(), 3);
    }
}

TEST(Parse, NativeGateIsNotGeneric) {
    EXPECT_EQ(code_of([] { circuit::parse_circuit(std::string(kHeader) + "qreg q[1]; prx(pi,0) q[0];"); }),
              ErrorCode::UnsupportedGate);
}

TEST(Parse, SyntaxErrors) {
    for (const char* body : {"qreg q[2]; h q[0]", "qreg q[2]; cx q[0] q[1];", "qreg q[2]; rz() q[0];",
                             "qreg q[2]; rz(1,2) q[0];", "qreg q[2]; h q[0;"}) {
        EXPECT_THROW(circuit::parse_circuit(std::string(kHeader) + body), Error) << body;
    }
}

TEST(Parse, AnglesAndMeasure) {
    auto c = circuit::parse_circuit(std::string(kHeader) +
                                    "qreg q[2]; creg c[2];\nrz(pi/2) q[1];\nrx(-3*pi/4) q[0];\nry(0.25) q[0];\n"
                                    "barrier q[0],q[1];\nmeasure q[1] -> c[0];\n");
    ASSERT_EQ(c.size(), 5u);
    EXPECT_DOUBLE_EQ(c.ops()[0].params[0], kPi / 2);
    EXPECT_DOUBLE_EQ(c.ops()[1].params[0], -3 * kPi / 4);
    EXPECT_DOUBLE_EQ(c.ops()[2].params[0], 0.25);
    EXPECT_TRUE(c.ops()[3].is_barrier());
    EXPECT_EQ(c.ops()[4], make_measure(1, 0));
}

TEST(Parse, ClbitWrittenTwice) {
    EXPECT_THROW(circuit::parse_circuit(std::string(kHeader) +
                                        "qreg q[2]; creg c[1]; measure q[0] -> c[0]; measure q[1] -> c[0];"),
                 Error);
}

TEST(Parse, QasmRoundTrip) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        auto c = testing::random_generic_circuit(rng, {1, 4, 30, i % 2 == 0});
        EXPECT_EQ(circuit::parse_circuit(circuit::to_qasm(c)), c);
    }
}

TEST(Angle, Expressions) {
    EXPECT_DOUBLE_EQ(circuit::evaluate_angle("pi"), kPi);
    EXPECT_DOUBLE_EQ(circuit::evaluate_angle("-(pi - 1) * 2"), -(kPi - 1) * 2);
    EXPECT_DOUBLE_EQ(circuit::evaluate_angle("theta/2", {{"theta", 3.0}}), 1.5);
    EXPECT_THROW(circuit::evaluate_angle("pi +"), Error);
    EXPECT_THROW(circuit::evaluate_angle("phi"), Error);
}

// --- circuit invariants ------------------------------------------------------

TEST(Circuit, AppendChecksInvariants) {
    QuantumCircuit c(2, 1);
    EXPECT_EQ(code_of([&] { c.append(make_op("cx", {0, 0})); }), ErrorCode::Validation);
    EXPECT_EQ(code_of([&] { c.append(make_op("rz", {0})); }), ErrorCode::Validation);
    EXPECT_EQ(code_of([&] { c.append(make_op("rz", {0}, {std::nan("")})); }), ErrorCode::Validation);
    EXPECT_EQ(code_of([&] { c.append(make_op("h", {2})); }), ErrorCode::Index);
    EXPECT_EQ(code_of([&] { c.append(make_op("prx", {0}, {1, 2})); }), ErrorCode::UnsupportedGate);
    EXPECT_TRUE(c.empty());
}

TEST(Circuit, DepthCountsLayers) {
    QuantumCircuit c(3, 0);
    c.append(make_op("h", {0}));
    c.append(make_op("h", {1}));
    c.append(make_op("cx", {0, 1}));
    c.append(make_op("x", {2}));
    EXPECT_EQ(c.depth(), 2);
}

// --- low-level form ---------------------------------------------------------------

QuantumCircuit random_native(std::mt19937_64& rng) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const int clbits = static_cast<int>(rng() % (n + 1));
    QuantumCircuit c(n, clbits, Level::Native);
    std::vector<int> l2p(n);
    std::iota(l2p.begin(), l2p.end(), 0);
    std::shuffle(l2p.begin(), l2p.end(), rng);
    auto final_map = l2p;
    std::shuffle(final_map.begin(), final_map.end(), rng);
    std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
    const int ops = static_cast<int>(rng() % 40);
    for (int i = 0; i < ops; ++i) {
        const int q = static_cast<int>(rng() % n);
        switch (rng() % 5) {
            case 0: c.append(make_op("prx", {q}, {angle(rng), angle(rng)})); break;
            case 1: c.append(make_op("rz", {q}, {angle(rng)})); break;
            case 2:
                if (n > 1) c.append(make_op("cz", {q, (q + 1) % n}));
                break;
            case 3:
                if (n > 1) c.append(make_op("rxx", {(q + 1) % n, q}, {angle(rng)}));
                break;
            default: c.append(make_op("barrier", {q})); break;
        }
    }
    for (int k = 0; k < clbits; ++k) c.append(make_measure(k, k));
    c.set_native("dev" + std::to_string(n), circuit::Layout(l2p), circuit::Layout(final_map));
    return c;
}

TEST(LowLevel, LineFormat) {
    QuantumCircuit c(4, 0, Level::Native);
    c.append(make_op("prx", {3}, {kPi, 0}));
    c.set_native("sc20", circuit::Layout::identity(4), circuit::Layout::identity(4));
    const auto text = circuit::emit_lowlevel(c);
    EXPECT_NE(text.find("\nprx 3.141592653589793 0 q3\n"), std::string::npos) << text;
    EXPECT_NE(text.find(".device sc20"), std::string::npos);
}

TEST(LowLevel, EmptyIsHeaderOnly) {
    QuantumCircuit c(2, 0, Level::Native);
    c.set_native("ion5", circuit::Layout::identity(2), circuit::Layout::identity(2));
    const auto text = circuit::emit_lowlevel(c);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        EXPECT_TRUE(line.empty() || line[0] == '.' || line[0] == ';') << line;
    }
    EXPECT_EQ(circuit::parse_lowlevel(text), c);
}

TEST(LowLevel, GenericIsRejected) {
    QuantumCircuit c(1, 0);
    EXPECT_EQ(code_of([&] { circuit::emit_lowlevel(c); }), ErrorCode::Level);
}

TEST(LowLevel, RoundTripRandomCircuits) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        auto c = random_native(rng);
        EXPECT_EQ(circuit::parse_lowlevel(circuit::emit_lowlevel(c)), c) << circuit::emit_lowlevel(c);
    }
}

TEST(LowLevel, MalformedText) {
    EXPECT_THROW(circuit::parse_lowlevel(".device x\n.qubits 2\nprx 1 q0\n"), Error);
    EXPECT_THROW(circuit::parse_lowlevel(".device x\n.qubits 2\ncz q0 q5\n"), Error);
}

}  // namespace
}  // namespace ministack
