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
#include <string>
#include <vector>

#include "ministack/circuit/gate.hpp"

namespace ministack::circuit {

/// The two IR levels. GENERIC circuits use the device-independent gate set
/// over logical qubits; NATIVE circuits use a device's native gates over
/// physical qubits and carry the placement that produced them.
enum class Level { Generic, Native };

std::string_view level_name(Level level);

/// Injective map logical qubit -> physical qubit.
class Layout {
public:
    Layout() = default;
    explicit Layout(std::vector<int> logical_to_physical);

    static Layout identity(int num_logical);

    [[nodiscard]] int size() const { return static_cast<int>(map_.size()); }
    [[nodiscard]] int physical(int logical) const { return map_.at(logical); }
    [[nodiscard]] const std::vector<int>& map() const { return map_; }
    /// Logical qubit placed on `physical`, or -1.
    [[nodiscard]] int logical(int physical) const;

    /// True when the image is distinct and every entry is in [0, num_physical).
    [[nodiscard]] bool valid_for(int num_physical) const;

    bool operator==(const Layout&) const = default;

private:
    std::vector<int> map_;
};

/// A quantum circuit at one IR level. Ops are validated on append.
class QuantumCircuit {
public:
    QuantumCircuit() = default;
    QuantumCircuit(int num_qubits, int num_clbits, Level level = Level::Generic);

    /// Validates the op against the arity table, qubit/clbit bounds and the
    /// level's gate set, then appends it. Throws UnsupportedGate, Index or
    /// Validation errors.
    void append(GateOp op);
    /// Appends without re-validating; for passes that only rearrange ops
    /// already accepted by this circuit's invariants.
    void append_unchecked(GateOp op);

    [[nodiscard]] Level level() const { return level_; }
    [[nodiscard]] int num_qubits() const { return num_qubits_; }
    [[nodiscard]] int num_clbits() const { return num_clbits_; }
    [[nodiscard]] const std::vector<GateOp>& ops() const { return ops_; }
    [[nodiscard]] std::size_t size() const { return ops_.size(); }
    [[nodiscard]] bool empty() const { return ops_.empty(); }

    /// Copy with the same registers and level but no ops.
    [[nodiscard]] QuantumCircuit empty_like() const;

    // NATIVE-level metadata. `layout` is the initial placement and
    // `final_layout` the placement after routing swaps.
    [[nodiscard]] const std::string& device() const { return device_; }
    [[nodiscard]] const Layout& layout() const { return layout_; }
    [[nodiscard]] const Layout& final_layout() const { return final_layout_; }
    void set_native(std::string device, Layout layout, Layout final_layout);

    [[nodiscard]] bool has_measure() const;
    /// Number of ASAP layers over unitary and measure ops (barriers align
    /// their qubits but add no layer).
    [[nodiscard]] int depth() const;
    /// Stable 64-bit FNV-1a digest of the structural content.
    [[nodiscard]] std::uint64_t digest() const;

    /// Structural equality: level, registers, ops and native metadata.
    bool operator==(const QuantumCircuit& other) const;

private:
    Level level_ = Level::Generic;
    int num_qubits_ = 0;
    int num_clbits_ = 0;
    std::vector<GateOp> ops_;
    std::vector<bool> clbit_written_;
    std::string device_;
    Layout layout_;
    Layout final_layout_;
};

std::string to_string(const GateOp& op);

}  // namespace ministack::circuit
