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

// Dense unitary oracle. Used by tests to check that every transformation in
// the stack preserves semantics; never on a hot path.

#pragma once

#include <vector>

#include "ministack/circuit/circuit.hpp"

namespace ministack::circuit {

inline constexpr int kMaxUnitaryQubits = 12;
inline constexpr double kEquivalenceTolerance = 1e-9;

/// Row-major 2^n x 2^n complex matrix. Qubit 0 is the least-significant bit
/// of basis-state indices.
class UnitaryMatrix {
public:
    UnitaryMatrix() = default;
    explicit UnitaryMatrix(int num_qubits);  // identity

    static UnitaryMatrix from_entries(int num_qubits, std::vector<Complex> entries);

    [[nodiscard]] int num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] Complex operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    [[nodiscard]] const std::vector<Complex>& entries() const { return data_; }

    /// this * other.
    [[nodiscard]] UnitaryMatrix multiply(const UnitaryMatrix& other) const;
    [[nodiscard]] UnitaryMatrix adjoint() const;
    /// max |(U^dagger U - I)_ij|.
    [[nodiscard]] double unitarity_error() const;

private:
    int num_qubits_ = 0;
    std::size_t dim_ = 1;
    std::vector<Complex> data_{Complex{1.0, 0.0}};
};

/// Product of the circuit's gate matrices, first op applied first. Barriers
/// are ignored. Throws TooLarge (> 12 qubits) or MeasurePresent.
UnitaryMatrix circuit_unitary(const QuantumCircuit& circuit);

/// Left-multiplies `u` by the embedding of one gate.
void apply_gate(UnitaryMatrix& u, const GateOp& op);

/// |tr(A^dagger B)| / dim >= 1 - tol. Throws DimMismatch.
bool unitary_equiv(const UnitaryMatrix& a, const UnitaryMatrix& b, double tol = kEquivalenceTolerance);

/// 1 - |tr(A^dagger B)| / dim; the quantity unitary_equiv thresholds.
double fidelity_deficit(const UnitaryMatrix& a, const UnitaryMatrix& b);

}  // namespace ministack::circuit
