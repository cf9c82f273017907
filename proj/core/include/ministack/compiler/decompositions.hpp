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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ministack/circuit/circuit.hpp"

namespace ministack::compiler {

/// One step of a decomposition: a gate on local qubit slots with symbolic
/// angle expressions over `theta` (the source gate's parameter) and `pi`.
struct DecompositionStep {
    std::string gate;
    std::vector<int> qubits;
    std::vector<std::string> params;
};

struct DecompositionRule {
    std::string gate;
    /// Gates the sequence uses.
    std::set<std::string> target;
    std::vector<DecompositionStep> sequence;

    /// The rule's ops for concrete source qubits and parameters.
    [[nodiscard]] std::vector<circuit::GateOp> instantiate(const std::vector<int>& qubits,
                                                           const std::vector<double>& params) const;
};

/// Ordered rule list. Throws Error(Validation) on malformed entries.
std::vector<DecompositionRule> parse_decompositions(const nlohmann::json& j);
/// The checked-in table.
const std::vector<DecompositionRule>& builtin_decompositions();

/// Rewrites gates into a native set using a rule table.
///
/// A gate's rank is 0 when it is native and otherwise the fixpoint round in
/// which some rule first made it reachable. Expansion uses the first rule
/// (in table order) whose gates all have a lower rank than the source gate,
/// so it always terminates.
class Translator {
public:
    Translator(std::set<std::string> native_gates,
               const std::vector<DecompositionRule>& rules = builtin_decompositions());

    [[nodiscard]] bool reachable(std::string_view gate) const;
    /// Rank of a gate, -1 when unreachable.
    [[nodiscard]] int rank(std::string_view gate) const;

    /// Appends the native expansion of `op` to `out`. measure and barrier
    /// pass through. Throws Error(NoDecomposition).
    void expand(const circuit::GateOp& op, std::vector<circuit::GateOp>& out) const;

    [[nodiscard]] const std::set<std::string>& native_gates() const { return native_; }

private:
    std::set<std::string> native_;
    std::map<std::string, int, std::less<>> rank_;
    std::map<std::string, const DecompositionRule*, std::less<>> chosen_;
};

}  // namespace ministack::compiler
