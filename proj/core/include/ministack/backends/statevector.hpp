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

#include <cstdint>
#include <random>
#include <vector>

#include "ministack/circuit/gate.hpp"

namespace ministack::backends {

using circuit::Complex;

/// Dense n-qubit state, qubit 0 the least-significant index bit.
class Statevector {
public:
    /// |0...0>. Throws Error(TooLarge) above kMaxQubits.
    explicit Statevector(int num_qubits);

    static constexpr int kMaxQubits = 24;

    [[nodiscard]] int num_qubits() const { return num_qubits_; }
    [[nodiscard]] const std::vector<Complex>& amplitudes() const { return amps_; }

    /// Applies a unitary op on local qubit indices. Measure and barrier are
    /// ignored.
    void apply(const circuit::GateOp& op);
    void apply_1q(const circuit::GateMatrix& m, int q);
    /// Local matrix index is bit(q0) + 2 * bit(q1).
    void apply_2q(const circuit::GateMatrix& m, int q0, int q1);

    [[nodiscard]] double norm() const;
    [[nodiscard]] std::vector<double> probabilities() const;

private:
    int num_qubits_;
    std::vector<Complex> amps_;
};

/// Draws `shots` basis indices by inverting the cumulative distribution of
/// `probabilities` (which need not be exactly normalised).
std::vector<std::uint64_t> sample_indices(const std::vector<double>& probabilities, int shots, std::mt19937_64& rng);

/// Uniform double in [0, 1) with 53 random bits; portable across standard
/// libraries unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace ministack::backends
