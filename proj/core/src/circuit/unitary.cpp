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

#include "ministack/circuit/unitary.hpp"

#include <algorithm>
#include <cmath>

#include "ministack/error.hpp"

namespace ministack::circuit {

UnitaryMatrix::UnitaryMatrix(int num_qubits)
    : num_qubits_(num_qubits), dim_(std::size_t{1} << num_qubits), data_(dim_ * dim_) {
    for (std::size_t i = 0; i < dim_; ++i) data_[i * dim_ + i] = 1.0;
}

UnitaryMatrix UnitaryMatrix::from_entries(int num_qubits, std::vector<Complex> entries) {
    UnitaryMatrix u(num_qubits);
    if (entries.size() != u.dim_ * u.dim_) throw Error(ErrorCode::DimMismatch, "entry count does not match 4^n");
    u.data_ = std::move(entries);
    return u;
}

UnitaryMatrix UnitaryMatrix::multiply(const UnitaryMatrix& other) const {
    if (dim_ != other.dim_) throw Error(ErrorCode::DimMismatch, "matrix dimensions differ");
    UnitaryMatrix out(num_qubits_);
    std::fill(out.data_.begin(), out.data_.end(), Complex{});
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const Complex a = data_[i * dim_ + k];
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < dim_; ++j) out.data_[i * dim_ + j] += a * other.data_[k * dim_ + j];
        }
    }
    return out;
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    UnitaryMatrix out(num_qubits_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) out.data_[j * dim_ + i] = std::conj(data_[i * dim_ + j]);
    }
    return out;
}

double UnitaryMatrix::unitarity_error() const {
    const UnitaryMatrix p = adjoint().multiply(*this);
    double err = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            err = std::max(err, std::abs(p(i, j) - (i == j ? Complex{1.0} : Complex{})));
        }
    }
    return err;
}

void apply_gate(UnitaryMatrix& u, const GateOp& op) {
    const GateMatrix g = gate_matrix(op);
    const int k = g.num_qubits;
    const std::size_t dim = u.dim();
    // Row r of the product reads the rows sharing r's bits outside the
    // gate's qubits; the local index of a row packs its bits on op.qubits.
    std::size_t mask = 0;
    for (int q : op.qubits) mask |= std::size_t{1} << q;
    auto local_of = [&](std::size_t row) {
        int local = 0;
        for (int b = 0; b < k; ++b) local |= static_cast<int>((row >> op.qubits[b]) & 1u) << b;
        return local;
    };
    auto row_with = [&](std::size_t row, int local) {
        std::size_t r = row & ~mask;
        for (int b = 0; b < k; ++b) r |= static_cast<std::size_t>((local >> b) & 1) << op.qubits[b];
        return r;
    };

    std::vector<Complex> out(dim * dim);
    for (std::size_t row = 0; row < dim; ++row) {
        const int lr = local_of(row);
        for (int lc = 0; lc < g.dim(); ++lc) {
            const Complex coeff = g(lr, lc);
            if (coeff == Complex{}) continue;
            const std::size_t src = row_with(row, lc);
            for (std::size_t col = 0; col < dim; ++col) out[row * dim + col] += coeff * u(src, col);
        }
    }
    u = UnitaryMatrix::from_entries(u.num_qubits(), std::move(out));
}

UnitaryMatrix circuit_unitary(const QuantumCircuit& circuit) {
    if (circuit.num_qubits() > kMaxUnitaryQubits) {
        throw Error(ErrorCode::TooLarge, "unitary oracle is capped at " + std::to_string(kMaxUnitaryQubits) +
                                             " qubits, circuit has " + std::to_string(circuit.num_qubits()));
    }
    if (circuit.has_measure()) throw Error(ErrorCode::MeasurePresent, "circuit contains measure operations");
    UnitaryMatrix u(circuit.num_qubits());
    for (const auto& op : circuit.ops()) {
        if (op.is_barrier()) continue;
        apply_gate(u, op);
    }
    return u;
}

double fidelity_deficit(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "unitaries have different dimensions");
    Complex trace{};
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) trace += std::conj(ea[i]) * eb[i];
    return 1.0 - std::abs(trace) / static_cast<double>(a.dim());
}

bool unitary_equiv(const UnitaryMatrix& a, const UnitaryMatrix& b, double tol) {
    return fidelity_deficit(a, b) <= tol;
}

}  // namespace ministack::circuit
