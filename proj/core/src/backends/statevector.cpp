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

#include "ministack/backends/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ministack/error.hpp"

namespace ministack::backends {

Statevector::Statevector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0 || num_qubits > kMaxQubits) {
        throw Error(ErrorCode::TooLarge, "statevector limited to " + std::to_string(kMaxQubits) + " qubits, got " +
                                             std::to_string(num_qubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, Complex{0, 0});
    amps_[0] = 1;
}

void Statevector::apply(const circuit::GateOp& op) {
    if (!op.is_unitary()) return;
    const auto m = circuit::gate_matrix(op);
    if (m.num_qubits == 1) {
        apply_1q(m, op.qubits.at(0));
    } else {
        apply_2q(m, op.qubits.at(0), op.qubits.at(1));
    }
}

void Statevector::apply_1q(const circuit::GateMatrix& m, int q) {
    const std::size_t bit = std::size_t{1} << q;
    const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) continue;
        const Complex a0 = amps_[i];
        const Complex a1 = amps_[i | bit];
        amps_[i] = m00 * a0 + m01 * a1;
        amps_[i | bit] = m10 * a0 + m11 * a1;
    }
}

void Statevector::apply_2q(const circuit::GateMatrix& m, int q0, int q1) {
    const std::size_t b0 = std::size_t{1} << q0;
    const std::size_t b1 = std::size_t{1} << q1;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & (b0 | b1)) continue;
        const std::size_t idx[4] = {i, i | b0, i | b1, i | b0 | b1};
        Complex in[4];
        for (int k = 0; k < 4; ++k) in[k] = amps_[idx[k]];
        for (int r = 0; r < 4; ++r) {
            Complex acc = 0;
            for (int c = 0; c < 4; ++c) acc += m(r, c) * in[c];
            amps_[idx[r]] = acc;
        }
    }
}

double Statevector::norm() const {
    double s = 0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

std::vector<double> Statevector::probabilities() const {
    std::vector<double> p(amps_.size());
    std::transform(amps_.begin(), amps_.end(), p.begin(), [](const Complex& a) { return std::norm(a); });
    return p;
}

std::vector<std::uint64_t> sample_indices(const std::vector<double>& probabilities, int shots, std::mt19937_64& rng) {
    std::vector<double> cumulative(probabilities.size());
    std::partial_sum(probabilities.begin(), probabilities.end(), cumulative.begin());
    const double total = cumulative.empty() ? 0.0 : cumulative.back();
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(std::max(shots, 0)));
    for (int s = 0; s < shots; ++s) {
        const double u = uniform01(rng) * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        // u rounds up to total: take the first index reaching it, never a
        // zero-probability tail entry.
        if (it == cumulative.end()) it = std::lower_bound(cumulative.begin(), cumulative.end(), total);
        out.push_back(static_cast<std::uint64_t>(it - cumulative.begin()));
    }
    return out;
}

}  // namespace ministack::backends
