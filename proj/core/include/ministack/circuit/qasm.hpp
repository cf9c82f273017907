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

// Circuit source format: a strict subset of OpenQASM 2.0. See
// docs/circuit-format.md for the grammar.

#pragma once

#include <map>
#include <string>
#include <string_view>

#include "ministack/circuit/circuit.hpp"

namespace ministack::circuit {

using AngleBindings = std::map<std::string, double, std::less<>>;

/// Evaluates an angle expression: decimal literals, `pi`, bound names,
/// unary minus, + - * / and parentheses. Throws SyntaxError.
double evaluate_angle(std::string_view expression, const AngleBindings& bindings = {});

/// Parses circuit source into a GENERIC circuit. Throws SyntaxError with the
/// offending line/column (code Syntax, UnsupportedGate or Index).
QuantumCircuit parse_circuit(std::string_view text);

/// Serializes a GENERIC circuit back into the source format using a single
/// `q`/`c` register pair. parse_circuit(to_qasm(c)) == c.
std::string to_qasm(const QuantumCircuit& circuit);

}  // namespace ministack::circuit
