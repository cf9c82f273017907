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

#include <map>
#include <string>

#include "ministack/circuit/circuit.hpp"
#include "ministack/compiler/decompositions.hpp"
#include "ministack/qdmi/types.hpp"

namespace ministack::compiler {

/// Rotation angles below this are dropped by fusion.
inline constexpr double kAngleElision = 1e-12;

/// True when `a` followed by `b` on the same qubits is the identity:
/// self-inverse gates (h x y z cx cz swap), s/sdg, t/tdg, and rotations with
/// opposite angles.
bool inverse_pair(const circuit::GateOp& a, const circuit::GateOp& b);

/// Commutation rule table: disjoint ops commute; {z s sdg t tdg rz cz}
/// commute with each other; x and rx commute on the same qubit.
bool commutes(const circuit::GateOp& a, const circuit::GateOp& b);

/// Removes adjacent inverse pairs (no op touching their qubits in between)
/// until none are left.
circuit::QuantumCircuit pass_cancel_inverse_pairs(const circuit::QuantumCircuit& c);

/// Moves each op earlier past ops it commutes with when that makes it
/// adjacent to an inverse partner or a same-named gate on the same qubits.
/// At most size^2 single-step moves.
circuit::QuantumCircuit pass_commute_reorder(const circuit::QuantumCircuit& c);

/// Replaces each maximal single-qubit run by rz(lambda) ry(theta) rz(phi)
/// (ZYZ, global phase dropped, tiny angles elided) when that is shorter.
circuit::QuantumCircuit pass_fuse_1q(const circuit::QuantumCircuit& c);

/// ZYZ angles (phi, theta, lambda) of a 2x2 unitary with
/// U ~ rz(phi) ry(theta) rz(lambda); phi and lambda in (-pi, pi].
struct ZyzAngles {
    double phi, theta, lambda;
};
ZyzAngles zyz_decompose(const circuit::GateMatrix& u);

/// Rewrites every gate into `native_gates`. The result is marked NATIVE
/// with an identity placeholder layout and still uses logical qubits.
/// Throws Error(NoDecomposition).
circuit::QuantumCircuit pass_basis_translate(const circuit::QuantumCircuit& c, const std::map<std::string, int>& native_gates);
circuit::QuantumCircuit pass_basis_translate(const circuit::QuantumCircuit& c, const Translator& translator);

/// Greedy fidelity-aware placement. Logical qubits go in order of
/// descending two-qubit interaction count (ties to the lower index); each
/// takes the free physical qubit that maximises the summed edge fidelity to
/// already placed partners, then the smallest total distance to them, then
/// the best free incident edge, then the lowest index. Throws TooWide.
circuit::Layout pass_place(const circuit::QuantumCircuit& c, const DeviceProperties& device,
                           const TelemetrySnapshot& snapshot);

struct RouteResult {
    circuit::QuantumCircuit circuit;
    int swaps = 0;
};

/// Maps a translated circuit onto physical qubits, inserting swaps (in
/// native gates) along the shortest path with the highest fidelity product,
/// ties to the lexicographically smallest path. Where the two qubits meet
/// on that path is chosen by a short greedy rollout of the following
/// interactions. The output is NATIVE on all
/// device qubits and records the initial and final layouts. Throws
/// DisconnectedDevice or TooWide.
RouteResult pass_route(const circuit::QuantumCircuit& c, const circuit::Layout& layout, const DeviceProperties& device,
                       const TelemetrySnapshot& snapshot);

}  // namespace ministack::compiler
