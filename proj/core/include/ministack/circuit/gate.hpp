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

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ministack::circuit {

using Complex = std::complex<double>;

/// Static description of a gate identifier. `num_qubits` is -1 for the
/// variadic `barrier`.
struct GateInfo {
    std::string_view name;
    int num_qubits;
    int num_params;
    bool generic;
};

/// Looks up a gate by its lower-case identifier; nullopt for unknown names.
std::optional<GateInfo> find_gate(std::string_view name);

/// Gate identifiers accepted at the GENERIC level, in table order.
std::span<const std::string_view> generic_gate_names();

bool is_generic_gate(std::string_view name);

/// One operation of a circuit.
///
/// Invariants (checked by QuantumCircuit::append): qubits distinct, param
/// count matches the arity table, params finite, clbits non-empty only for
/// `measure`.
struct GateOp {
    std::string name;
    std::vector<double> params;
    std::vector<int> qubits;
    std::vector<int> clbits;

    bool operator==(const GateOp&) const = default;

    [[nodiscard]] bool is_measure() const { return name == "measure"; }
    [[nodiscard]] bool is_barrier() const { return name == "barrier"; }
    /// True for everything that has a unitary action (not measure/barrier).
    [[nodiscard]] bool is_unitary() const { return !is_measure() && !is_barrier(); }
};

GateOp make_op(std::string name, std::vector<int> qubits, std::vector<double> params = {});
GateOp make_measure(int qubit, int clbit);

/// Dense gate matrix, row-major, on 1 or 2 qubits. For two-qubit gates the
/// local basis index is bit(qubits[0]) + 2 * bit(qubits[1]).
struct GateMatrix {
    int num_qubits = 1;
    std::array<Complex, 16> entries{};

    [[nodiscard]] int dim() const { return 1 << num_qubits; }
    [[nodiscard]] Complex operator()(int row, int col) const { return entries[row * dim() + col]; }
    Complex& operator()(int row, int col) { return entries[row * dim() + col]; }
};

/// Matrix of a unitary gate. Conventions: rz(t) = diag(e^{-it/2}, e^{it/2});
/// prx(t, p) = rz(p) rx(t) rz(-p); rxx(t) = exp(-i t/2 X(x)X).
/// Throws Error(UnsupportedGate) for measure/barrier/unknown names.
GateMatrix gate_matrix(std::string_view name, std::span<const double> params);
inline GateMatrix gate_matrix(const GateOp& op) { return gate_matrix(op.name, op.params); }

/// Shortest round-trip decimal representation of an angle.
std::string format_angle(double value);

}  // namespace ministack::circuit
