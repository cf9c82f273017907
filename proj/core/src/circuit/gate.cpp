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

#include "ministack/circuit/gate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "ministack/error.hpp"

namespace ministack::circuit {
namespace {

constexpr std::array<GateInfo, 19> kGates{{
    {"id", 1, 0, true},
    {"x", 1, 0, true},
    {"y", 1, 0, true},
    {"z", 1, 0, true},
    {"h", 1, 0, true},
    {"s", 1, 0, true},
    {"sdg", 1, 0, true},
    {"t", 1, 0, true},
    {"tdg", 1, 0, true},
    {"rx", 1, 1, true},
    {"ry", 1, 1, true},
    {"rz", 1, 1, true},
    {"cx", 2, 0, true},
    {"cz", 2, 0, true},
    {"swap", 2, 0, true},
    {"barrier", -1, 0, true},
    {"measure", 1, 0, true},
    {"prx", 1, 2, false},
    {"rxx", 2, 1, false},
}};

constexpr std::array<std::string_view, 17> kGenericNames{
    "id", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "rx", "ry", "rz", "cx", "cz", "swap", "barrier", "measure"};

constexpr Complex kI{0.0, 1.0};

GateMatrix one_qubit(Complex a, Complex b, Complex c, Complex d) {
    GateMatrix m;
    m.num_qubits = 1;
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

GateMatrix rz_matrix(double theta) {
    return one_qubit(std::exp(-kI * (theta / 2)), 0.0, 0.0, std::exp(kI * (theta / 2)));
}

GateMatrix phase_matrix(double lambda) { return one_qubit(1.0, 0.0, 0.0, std::exp(kI * lambda)); }

}  // namespace

std::optional<GateInfo> find_gate(std::string_view name) {
    auto it = std::find_if(kGates.begin(), kGates.end(), [&](const GateInfo& g) { return g.name == name; });
    if (it == kGates.end()) return std::nullopt;
    return *it;
}

std::span<const std::string_view> generic_gate_names() { return kGenericNames; }

bool is_generic_gate(std::string_view name) {
    return std::find(kGenericNames.begin(), kGenericNames.end(), name) != kGenericNames.end();
}

GateOp make_op(std::string name, std::vector<int> qubits, std::vector<double> params) {
    return GateOp{std::move(name), std::move(params), std::move(qubits), {}};
}

GateOp make_measure(int qubit, int clbit) { return GateOp{"measure", {}, {qubit}, {clbit}}; }

GateMatrix gate_matrix(std::string_view name, std::span<const double> params) {
    using std::numbers::pi;
    const double r = 1.0 / std::sqrt(2.0);
    auto param = [&](std::size_t i) {
        if (i >= params.size()) {
            throw Error(ErrorCode::UnsupportedGate, "missing parameter for gate '" + std::string(name) + "'");
        }
        return params[i];
    };

    if (name == "id") return one_qubit(1.0, 0.0, 0.0, 1.0);
    if (name == "x") return one_qubit(0.0, 1.0, 1.0, 0.0);
    if (name == "y") return one_qubit(0.0, -kI, kI, 0.0);
    if (name == "z") return one_qubit(1.0, 0.0, 0.0, -1.0);
    if (name == "h") return one_qubit(r, r, r, -r);
    if (name == "s") return phase_matrix(pi / 2);
    if (name == "sdg") return phase_matrix(-pi / 2);
    if (name == "t") return phase_matrix(pi / 4);
    if (name == "tdg") return phase_matrix(-pi / 4);
    if (name == "rx") {
        const double c = std::cos(param(0) / 2), s = std::sin(param(0) / 2);
        return one_qubit(c, -kI * s, -kI * s, c);
    }
    if (name == "ry") {
        const double c = std::cos(param(0) / 2), s = std::sin(param(0) / 2);
        return one_qubit(c, -s, s, c);
    }
    if (name == "rz") return rz_matrix(param(0));
    if (name == "prx") {
        const double c = std::cos(param(0) / 2), s = std::sin(param(0) / 2);
        const double phi = param(1);
        return one_qubit(c, -kI * std::exp(-kI * phi) * s, -kI * std::exp(kI * phi) * s, c);
    }

    GateMatrix m;
    m.num_qubits = 2;
    if (name == "cx") {
        // control = qubits[0] (local bit 0), target = qubits[1] (local bit 1)
        m(0, 0) = 1.0;
        m(3, 1) = 1.0;
        m(2, 2) = 1.0;
        m(1, 3) = 1.0;
        return m;
    }
    if (name == "cz") {
        m(0, 0) = 1.0;
        m(1, 1) = 1.0;
        m(2, 2) = 1.0;
        m(3, 3) = -1.0;
        return m;
    }
    if (name == "swap") {
        m(0, 0) = 1.0;
        m(1, 2) = 1.0;
        m(2, 1) = 1.0;
        m(3, 3) = 1.0;
        return m;
    }
    if (name == "rxx") {
        const double c = std::cos(param(0) / 2), s = std::sin(param(0) / 2);
        for (int i = 0; i < 4; ++i) {
            m(i, i) = c;
            m(i, 3 - i) = -kI * s;
        }
        return m;
    }
    throw Error(ErrorCode::UnsupportedGate, "gate '" + std::string(name) + "' has no matrix");
}

std::string format_angle(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    (void)ec;
    return std::string(buf.data(), end);
}

}  // namespace ministack::circuit
