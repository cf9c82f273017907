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

#include "ministack/compiler/decompositions.hpp"

#include <algorithm>

#include "ministack/circuit/qasm.hpp"
#include "ministack/data/decompositions.hpp"
#include "ministack/error.hpp"

namespace ministack::compiler {

std::vector<circuit::GateOp> DecompositionRule::instantiate(const std::vector<int>& qubits,
                                                            const std::vector<double>& params) const {
    circuit::AngleBindings bindings;
    if (!params.empty()) bindings.emplace("theta", params[0]);
    std::vector<circuit::GateOp> out;
    out.reserve(sequence.size());
    for (const auto& step : sequence) {
        circuit::GateOp op;
        op.name = step.gate;
        for (int slot : step.qubits) op.qubits.push_back(qubits.at(slot));
        for (const auto& expr : step.params) op.params.push_back(circuit::evaluate_angle(expr, bindings));
        out.push_back(std::move(op));
    }
    return out;
}

std::vector<DecompositionRule> parse_decompositions(const nlohmann::json& j) {
    if (!j.is_array()) throw Error(ErrorCode::Validation, "decomposition table must be a JSON array");
    std::vector<DecompositionRule> rules;
    for (const auto& e : j) {
        DecompositionRule r;
        r.gate = e.at("gate").get<std::string>();
        const auto info = circuit::find_gate(r.gate);
        if (!info || info->num_qubits < 1) throw Error(ErrorCode::Validation, "decomposition for unknown gate '" + r.gate + "'");
        for (const auto& s : e.at("sequence")) {
            DecompositionStep step;
            step.gate = s.at("gate").get<std::string>();
            step.qubits = s.at("qubits").get<std::vector<int>>();
            step.params = s.value("params", std::vector<std::string>{});
            const auto sinfo = circuit::find_gate(step.gate);
            if (!sinfo || sinfo->num_qubits != static_cast<int>(step.qubits.size()) ||
                sinfo->num_params != static_cast<int>(step.params.size())) {
                throw Error(ErrorCode::Validation, "bad step '" + step.gate + "' in decomposition of '" + r.gate + "'");
            }
            for (int q : step.qubits) {
                if (q < 0 || q >= info->num_qubits) {
                    throw Error(ErrorCode::Validation, "qubit slot out of range in decomposition of '" + r.gate + "'");
                }
            }
            r.target.insert(step.gate);
            r.sequence.push_back(std::move(step));
        }
        const auto declared = e.at("target").get<std::set<std::string>>();
        if (declared != r.target) {
            throw Error(ErrorCode::Validation, "target set of '" + r.gate + "' does not match its sequence");
        }
        rules.push_back(std::move(r));
    }
    return rules;
}

const std::vector<DecompositionRule>& builtin_decompositions() {
    static const auto rules = parse_decompositions(nlohmann::json::parse(data::k_decompositions));
    return rules;
}

Translator::Translator(std::set<std::string> native_gates, const std::vector<DecompositionRule>& rules)
    : native_(std::move(native_gates)) {
    for (const auto& g : native_) rank_[g] = 0;
    for (int round = 1;; ++round) {
        std::map<std::string, const DecompositionRule*, std::less<>> found;
        for (const auto& r : rules) {
            if (rank_.contains(r.gate) || found.contains(r.gate)) continue;
            const bool ready = std::all_of(r.target.begin(), r.target.end(), [&](const std::string& g) {
                auto it = rank_.find(g);
                return it != rank_.end() && it->second < round;
            });
            if (ready) found.emplace(r.gate, &r);
        }
        if (found.empty()) break;
        for (const auto& [gate, rule] : found) rank_[gate] = round;
    }
    // Choose per gate the first rule whose gates all rank lower.
    for (const auto& r : rules) {
        auto it = rank_.find(r.gate);
        if (it == rank_.end() || it->second == 0 || chosen_.contains(r.gate)) continue;
        const bool lower = std::all_of(r.target.begin(), r.target.end(), [&](const std::string& g) {
            auto jt = rank_.find(g);
            return jt != rank_.end() && jt->second < it->second;
        });
        if (lower) chosen_.emplace(r.gate, &r);
    }
}

bool Translator::reachable(std::string_view gate) const { return rank_.contains(gate); }

int Translator::rank(std::string_view gate) const {
    auto it = rank_.find(gate);
    return it == rank_.end() ? -1 : it->second;
}

void Translator::expand(const circuit::GateOp& op, std::vector<circuit::GateOp>& out) const {
    if (op.is_measure() || op.is_barrier() || native_.contains(op.name)) {
        out.push_back(op);
        return;
    }
    auto it = chosen_.find(op.name);
    if (it == chosen_.end()) {
        throw Error(ErrorCode::NoDecomposition, "no decomposition of '" + op.name + "' into the native gate set");
    }
    for (auto& step : it->second->instantiate(op.qubits, op.params)) expand(step, out);
}

}  // namespace ministack::compiler
