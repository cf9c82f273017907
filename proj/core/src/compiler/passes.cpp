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

#include "ministack/compiler/passes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "ministack/error.hpp"

namespace ministack::compiler {

using circuit::Complex;
using circuit::GateOp;
using circuit::QuantumCircuit;

namespace {

const std::set<std::string, std::less<>> kSelfInverse = {"h", "x", "y", "z", "cx", "cz", "swap"};
const std::set<std::string, std::less<>> kSymmetric = {"cz", "swap", "rxx"};
const std::set<std::string, std::less<>> kRotations = {"rx", "ry", "rz", "rxx"};
const std::set<std::string, std::less<>> kDiagonal = {"z", "s", "sdg", "t", "tdg", "rz", "cz"};
const std::set<std::string, std::less<>> kXAxis = {"x", "rx"};

bool same_qubits(const GateOp& a, const GateOp& b) {
    if (a.qubits.size() != b.qubits.size()) return false;
    if (kSymmetric.contains(a.name) && a.name == b.name) {
        return std::is_permutation(a.qubits.begin(), a.qubits.end(), b.qubits.begin());
    }
    return a.qubits == b.qubits;
}

bool disjoint(const GateOp& a, const GateOp& b) {
    for (int q : a.qubits) {
        if (std::find(b.qubits.begin(), b.qubits.end(), q) != b.qubits.end()) return false;
    }
    return true;
}

bool adjoint_names(std::string_view a, std::string_view b) {
    return (a == "s" && b == "sdg") || (a == "sdg" && b == "s") || (a == "t" && b == "tdg") || (a == "tdg" && b == "t");
}

double normalize_angle(double x) {
    x = std::remainder(x, 2 * std::numbers::pi);
    return x <= -std::numbers::pi ? x + 2 * std::numbers::pi : x;
}

QuantumCircuit rebuild(const QuantumCircuit& like, const std::vector<GateOp>& ops) {
    auto out = like.empty_like();
    for (const auto& op : ops) out.append_unchecked(op);
    return out;
}

}  // namespace

bool inverse_pair(const GateOp& a, const GateOp& b) {
    if (!a.is_unitary() || !b.is_unitary() || !same_qubits(a, b)) return false;
    if (a.name == b.name && kSelfInverse.contains(a.name)) return true;
    if (adjoint_names(a.name, b.name)) return true;
    if (a.name == b.name && kRotations.contains(a.name)) return std::abs(a.params[0] + b.params[0]) < kAngleElision;
    return false;
}

bool commutes(const GateOp& a, const GateOp& b) {
    if (disjoint(a, b)) return true;
    if (!a.is_unitary() || !b.is_unitary()) return false;
    if (kDiagonal.contains(a.name) && kDiagonal.contains(b.name)) return true;
    return kXAxis.contains(a.name) && kXAxis.contains(b.name) && a.qubits == b.qubits;
}

QuantumCircuit pass_cancel_inverse_pairs(const QuantumCircuit& c) {
    std::vector<GateOp> ops = c.ops();
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<bool> alive(ops.size(), true);
        // Per qubit, the surviving ops touching it, most recent last.
        std::vector<std::vector<std::size_t>> stack(static_cast<std::size_t>(c.num_qubits()));
        for (std::size_t j = 0; j < ops.size(); ++j) {
            const auto& op = ops[j];
            const auto& front = stack[op.qubits[0]];
            if (op.is_unitary() && !front.empty()) {
                const std::size_t i = front.back();
                const bool adjacent = std::all_of(op.qubits.begin(), op.qubits.end(), [&](int q) {
                    return !stack[q].empty() && stack[q].back() == i;
                });
                if (adjacent && inverse_pair(ops[i], op)) {
                    alive[i] = alive[j] = false;
                    for (int q : op.qubits) stack[q].pop_back();
                    changed = true;
                    continue;
                }
            }
            for (int q : op.qubits) stack[q].push_back(j);
        }
        if (changed) {
            std::vector<GateOp> kept;
            for (std::size_t j = 0; j < ops.size(); ++j) {
                if (alive[j]) kept.push_back(std::move(ops[j]));
            }
            ops = std::move(kept);
        }
    }
    return rebuild(c, ops);
}

QuantumCircuit pass_commute_reorder(const QuantumCircuit& c) {
    std::vector<GateOp> ops = c.ops();
    std::size_t budget = ops.size() * ops.size();
    for (std::size_t j = 1; j < ops.size() && budget > 0; ++j) {
        const GateOp& op = ops[j];
        if (!op.is_unitary()) continue;
        std::optional<std::size_t> target;
        for (std::size_t k = j; k-- > 0;) {
            const GateOp& other = ops[k];
            if (disjoint(other, op)) continue;
            if (inverse_pair(other, op) || (other.name == op.name && other.qubits == op.qubits)) {
                target = k;
                break;
            }
            if (!commutes(other, op)) break;
        }
        if (!target || *target + 1 == j) continue;
        const std::size_t moves = j - *target - 1;
        if (moves > budget) break;
        budget -= moves;
        std::rotate(ops.begin() + static_cast<std::ptrdiff_t>(*target + 1), ops.begin() + static_cast<std::ptrdiff_t>(j),
                    ops.begin() + static_cast<std::ptrdiff_t>(j + 1));
    }
    return rebuild(c, ops);
}

ZyzAngles zyz_decompose(const circuit::GateMatrix& u) {
    // Strip the global phase so det = 1: V = [[a, -conj(b)], [b, conj(a)]].
    const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    const Complex scale = 1.0 / std::sqrt(det);
    const Complex a = u(0, 0) * scale;
    const Complex b = u(1, 0) * scale;
    ZyzAngles z{};
    z.theta = 2 * std::atan2(std::abs(b), std::abs(a));
    if (std::abs(b) < kAngleElision) {
        z.phi = -2 * std::arg(a);
        z.lambda = 0;
    } else if (std::abs(a) < kAngleElision) {
        z.phi = 2 * std::arg(b);
        z.lambda = 0;
    } else {
        const double sum = -2 * std::arg(a);   // phi + lambda
        const double diff = 2 * std::arg(b);   // phi - lambda
        z.phi = (sum + diff) / 2;
        z.lambda = (sum - diff) / 2;
    }
    z.phi = normalize_angle(z.phi);
    z.lambda = normalize_angle(z.lambda);
    return z;
}

QuantumCircuit pass_fuse_1q(const QuantumCircuit& c) {
    const auto& ops = c.ops();
    std::vector<std::vector<std::size_t>> runs;
    std::vector<int> open(static_cast<std::size_t>(c.num_qubits()), -1);
    for (std::size_t j = 0; j < ops.size(); ++j) {
        const auto& op = ops[j];
        if (op.is_unitary() && op.qubits.size() == 1) {
            int& r = open[op.qubits[0]];
            if (r < 0) {
                r = static_cast<int>(runs.size());
                runs.emplace_back();
            }
            runs[r].push_back(j);
        } else {
            for (int q : op.qubits) open[q] = -1;
        }
    }

    std::vector<bool> dropped(ops.size(), false);
    std::map<std::size_t, std::vector<GateOp>> replacement;  // keyed by run start
    for (const auto& run : runs) {
        circuit::GateMatrix u;
        u(0, 0) = u(1, 1) = 1;
        for (std::size_t j : run) {
            const auto g = circuit::gate_matrix(ops[j]);
            circuit::GateMatrix next;
            for (int r = 0; r < 2; ++r) {
                for (int k = 0; k < 2; ++k) next(r, k) = g(r, 0) * u(0, k) + g(r, 1) * u(1, k);
            }
            u = next;
        }
        const auto z = zyz_decompose(u);
        const int q = ops[run.front()].qubits[0];
        std::vector<GateOp> seq;
        if (std::abs(z.lambda) >= kAngleElision) seq.push_back(circuit::make_op("rz", {q}, {z.lambda}));
        if (std::abs(z.theta) >= kAngleElision) seq.push_back(circuit::make_op("ry", {q}, {z.theta}));
        if (std::abs(z.phi) >= kAngleElision) seq.push_back(circuit::make_op("rz", {q}, {z.phi}));
        if (seq.size() >= run.size()) continue;
        for (std::size_t j : run) dropped[j] = true;
        replacement.emplace(run.front(), std::move(seq));
    }

    auto out = c.empty_like();
    for (std::size_t j = 0; j < ops.size(); ++j) {
        if (auto it = replacement.find(j); it != replacement.end()) {
            for (const auto& op : it->second) out.append_unchecked(op);
        }
        if (!dropped[j]) out.append_unchecked(ops[j]);
    }
    return out;
}

QuantumCircuit pass_basis_translate(const QuantumCircuit& c, const std::map<std::string, int>& native_gates) {
    std::set<std::string> names;
    for (const auto& [name, arity] : native_gates) names.insert(name);
    return pass_basis_translate(c, Translator(std::move(names)));
}

QuantumCircuit pass_basis_translate(const QuantumCircuit& c, const Translator& translator) {
    QuantumCircuit out(c.num_qubits(), c.num_clbits(), circuit::Level::Native);
    if (c.level() == circuit::Level::Native) {
        out.set_native(c.device(), c.layout(), c.final_layout());
    } else {
        out.set_native("", circuit::Layout::identity(c.num_qubits()), circuit::Layout::identity(c.num_qubits()));
    }
    std::vector<GateOp> expanded;
    for (const auto& op : c.ops()) {
        expanded.clear();
        translator.expand(op, expanded);
        for (auto& e : expanded) out.append(std::move(e));
    }
    return out;
}

}  // namespace ministack::compiler
