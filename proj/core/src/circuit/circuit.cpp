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

#include "ministack/circuit/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ministack/error.hpp"

namespace ministack::circuit {

std::string_view level_name(Level level) { return level == Level::Generic ? "GENERIC" : "NATIVE"; }

Layout::Layout(std::vector<int> logical_to_physical) : map_(std::move(logical_to_physical)) {}

Layout Layout::identity(int num_logical) {
    std::vector<int> m(num_logical);
    for (int i = 0; i < num_logical; ++i) m[i] = i;
    return Layout(std::move(m));
}

int Layout::logical(int physical) const {
    auto it = std::find(map_.begin(), map_.end(), physical);
    return it == map_.end() ? -1 : static_cast<int>(it - map_.begin());
}

bool Layout::valid_for(int num_physical) const {
    std::set<int> seen;
    for (int p : map_) {
        if (p < 0 || p >= num_physical || !seen.insert(p).second) return false;
    }
    return true;
}

QuantumCircuit::QuantumCircuit(int num_qubits, int num_clbits, Level level)
    : level_(level), num_qubits_(num_qubits), num_clbits_(num_clbits), clbit_written_(num_clbits, false) {
    if (num_qubits < 0 || num_clbits < 0) throw Error(ErrorCode::Index, "negative register size");
}

void QuantumCircuit::append(GateOp op) {
    auto info = find_gate(op.name);
    if (!info) throw Error(ErrorCode::UnsupportedGate, "unknown gate '" + op.name + "'");
    if (level_ == Level::Generic && !info->generic) {
        throw Error(ErrorCode::UnsupportedGate, "gate '" + op.name + "' is not in the generic gate set");
    }
    if (info->num_qubits >= 0 && static_cast<int>(op.qubits.size()) != info->num_qubits) {
        throw Error(ErrorCode::Validation, "gate '" + op.name + "' expects " + std::to_string(info->num_qubits) +
                                               " qubit(s), got " + std::to_string(op.qubits.size()));
    }
    if (op.qubits.empty()) throw Error(ErrorCode::Validation, "gate '" + op.name + "' has no qubits");
    if (static_cast<int>(op.params.size()) != info->num_params) {
        throw Error(ErrorCode::Validation, "gate '" + op.name + "' expects " + std::to_string(info->num_params) +
                                               " parameter(s), got " + std::to_string(op.params.size()));
    }
    for (double p : op.params) {
        if (!std::isfinite(p)) throw Error(ErrorCode::Validation, "non-finite parameter on '" + op.name + "'");
    }
    std::set<int> distinct;
    for (int q : op.qubits) {
        if (q < 0 || q >= num_qubits_) {
            throw Error(ErrorCode::Index, "qubit index " + std::to_string(q) + " out of range for " +
                                              std::to_string(num_qubits_) + " qubit(s)");
        }
        if (!distinct.insert(q).second) throw Error(ErrorCode::Validation, "repeated qubit in '" + op.name + "'");
    }
    if (op.is_measure()) {
        if (op.clbits.size() != 1) throw Error(ErrorCode::Validation, "measure needs exactly one clbit");
        const int c = op.clbits.front();
        if (c < 0 || c >= num_clbits_) {
            throw Error(ErrorCode::Index, "clbit index " + std::to_string(c) + " out of range for " +
                                              std::to_string(num_clbits_) + " clbit(s)");
        }
        if (clbit_written_[c]) throw Error(ErrorCode::Validation, "clbit " + std::to_string(c) + " measured twice");
        clbit_written_[c] = true;
    } else if (!op.clbits.empty()) {
        throw Error(ErrorCode::Validation, "only measure may write clbits");
    }
    ops_.push_back(std::move(op));
}

void QuantumCircuit::append_unchecked(GateOp op) {
    for (int c : op.clbits) {
        if (c >= 0 && c < num_clbits_) clbit_written_[c] = true;
    }
    ops_.push_back(std::move(op));
}

bool QuantumCircuit::operator==(const QuantumCircuit& other) const {
    return level_ == other.level_ && num_qubits_ == other.num_qubits_ && num_clbits_ == other.num_clbits_ &&
           ops_ == other.ops_ && device_ == other.device_ && layout_ == other.layout_ &&
           final_layout_ == other.final_layout_;
}

QuantumCircuit QuantumCircuit::empty_like() const {
    QuantumCircuit out(num_qubits_, num_clbits_, level_);
    out.device_ = device_;
    out.layout_ = layout_;
    out.final_layout_ = final_layout_;
    return out;
}

void QuantumCircuit::set_native(std::string device, Layout layout, Layout final_layout) {
    level_ = Level::Native;
    device_ = std::move(device);
    layout_ = std::move(layout);
    final_layout_ = std::move(final_layout);
}

bool QuantumCircuit::has_measure() const {
    return std::any_of(ops_.begin(), ops_.end(), [](const GateOp& op) { return op.is_measure(); });
}

int QuantumCircuit::depth() const {
    std::vector<int> level(num_qubits_, 0);
    int depth = 0;
    for (const auto& op : ops_) {
        int start = 0;
        for (int q : op.qubits) start = std::max(start, level[q]);
        const int end = op.is_barrier() ? start : start + 1;
        for (int q : op.qubits) level[q] = end;
        depth = std::max(depth, end);
    }
    return depth;
}

std::uint64_t QuantumCircuit::digest() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::string_view bytes) {
        for (unsigned char c : bytes) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    mix(level_name(level_));
    mix(std::to_string(num_qubits_) + "/" + std::to_string(num_clbits_));
    for (const auto& op : ops_) mix(to_string(op) + ";");
    return h;
}

std::string to_string(const GateOp& op) {
    std::string out = op.name;
    if (!op.params.empty()) {
        out += "(";
        for (std::size_t i = 0; i < op.params.size(); ++i) {
            if (i) out += ",";
            out += format_angle(op.params[i]);
        }
        out += ")";
    }
    for (std::size_t i = 0; i < op.qubits.size(); ++i) out += (i ? "," : " ") + std::to_string(op.qubits[i]);
    for (int c : op.clbits) out += " -> " + std::to_string(c);
    return out;
}

}  // namespace ministack::circuit
