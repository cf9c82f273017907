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

// Independent reference computations used by the test suites.

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ministack/circuit/circuit.hpp"
#include "ministack/circuit/unitary.hpp"
#include "ministack/qdmi/types.hpp"
#include "ministack/scheduler/select.hpp"

namespace ministack::testing {

struct RandomCircuitOptions {
    int min_qubits = 1;
    int max_qubits = 4;
    int max_ops = 30;
    bool measure_all = false;
};

/// Random GENERIC circuit over the unitary generic gate set.
circuit::QuantumCircuit random_generic_circuit(std::mt19937_64& rng, const RandomCircuitOptions& options = {});

/// Compares a compiled (routed) NATIVE circuit with its GENERIC source.
///
/// The native circuit is restricted to the physical qubits it touches or
/// places logical qubits on; spare qubits start in |0>. For every logical
/// basis input x and output y the amplitude is read at the physical index
/// of x under the initial layout and of y under the final layout. The
/// resulting 2^n x 2^n block is compared with U(source) by fidelity
/// deficit, so leakage into spare qubits counts against it. Measures and
/// barriers are ignored on both sides.
double compiled_fidelity_deficit(const circuit::QuantumCircuit& source, const circuit::QuantumCircuit& native);

/// Fewest swaps needed to run the two-qubit interactions of `c` in order on
/// a line of `c.num_qubits()` qubits starting from the identity layout.
/// Exhaustive search over layouts.
int min_swaps_on_line(const circuit::QuantumCircuit& c);

/// All-pairs domination scan.
std::vector<scheduler::DeviceCandidate> brute_force_front(const std::vector<scheduler::DeviceCandidate>& candidates);

/// Reference selection: brute-force front, explicit min-max normalisation,
/// weighted sum, ties by device id.
DeviceId brute_force_select(const std::vector<scheduler::DeviceCandidate>& candidates,
                            const scheduler::SchedulingPolicy& policy);

/// Line device with `n` qubits and the given native gates.
DeviceProperties line_device(int n, const std::map<std::string, int>& native = {{"prx", 1}, {"cz", 2}, {"measure", 1}});

/// Snapshot with every native gate on every qubit/edge set to `fidelity` and
/// every readout to `readout`.
TelemetrySnapshot uniform_snapshot(const DeviceProperties& device, double fidelity = 1.0, double readout = 1.0);

/// Counts ops a device could not run: unknown or wrong-arity gates, qubit
/// or clbit indices out of range, two-qubit gates off the coupling map, and
/// gates on a qubit after it was measured.
int legality_violations(const circuit::QuantumCircuit& native, const DeviceProperties& device);

/// Allowed job-state edges, written out by hand: the forward chain
/// RECEIVED > SCHEDULED > COMPILED > QUEUED > RUNNING > DONE, plus
/// FAILED and CANCELLED from any non-terminal state.
bool legal_edge(JobState from, JobState to);

/// Standard deviation of each entry of the mitigated distribution
/// M^-1 q_hat, where q_hat is the empirical distribution of `shots` draws
/// from q = M p and M is the per-bit confusion tensor. Index i has bit b
/// (clbit b) at position b.
std::vector<double> mitigated_stddev(const std::vector<double>& p,
                                     const std::vector<std::pair<double, double>>& confusion, int shots);

/// Applies the per-bit confusion to a distribution (same indexing).
std::vector<double> apply_confusion(const std::vector<double>& p, const std::vector<std::pair<double, double>>& confusion);

}  // namespace ministack::testing
