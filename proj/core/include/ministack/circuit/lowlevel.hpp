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

#include <string>
#include <string_view>

#include "ministack/circuit/circuit.hpp"

namespace ministack::circuit {

/// Execution-ready text form of a NATIVE circuit:
///
///     ; ministack lowlevel v1
///     .device sc20
///     .qubits 20
///     .clbits 2
///     .layout 0:3 1:4
///     .final 0:3 1:4
///     prx 3.141592653589793 0 q3
///     cz q3 q4
///     measure q3 -> c0
///
/// Angles use the shortest round-trip decimal form, so parse_lowlevel
/// reproduces the circuit exactly. Throws Error(Level) for GENERIC input.
std::string emit_lowlevel(const QuantumCircuit& circuit);

/// Inverse of emit_lowlevel. Throws SyntaxError.
QuantumCircuit parse_lowlevel(std::string_view text);

}  // namespace ministack::circuit
