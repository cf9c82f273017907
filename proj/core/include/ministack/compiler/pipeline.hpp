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
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ministack/circuit/circuit.hpp"
#include "ministack/qdmi/types.hpp"

namespace ministack::compiler {

enum class Stage { Agnostic, Specific };

struct PassDescriptor {
    std::string name;
    Stage stage;
};

struct PassPipeline {
    std::vector<PassDescriptor> passes;
    std::string selector;
    /// Hash of the circuit digest and device id the selector saw.
    std::uint64_t inputs_hash = 0;

    [[nodiscard]] std::vector<std::string> names() const;
};

/// Names of the device-agnostic passes: cancel, commute_reorder, fuse_1q.
const std::vector<std::string>& agnostic_pass_names();
/// The mandatory trio, in order: basis_translate, place, route.
const std::vector<std::string>& specific_pass_names();

/// External selector: returns agnostic pass names for a circuit digest and
/// device id. Specific pass names in the result are ignored; the trio is
/// always appended.
using PassSelector = std::function<std::vector<std::string>(std::uint64_t circuit_digest, const DeviceId& device)>;

/// Registers or replaces a selector. "default" and "none" are built in and
/// cannot be replaced (Error(Validation)).
void register_pass_selector(const std::string& name, PassSelector selector);

/// Throws UnknownPolicy for an unregistered name, UnknownPass when a
/// selector returns an unknown pass.
PassPipeline select_passes(const circuit::QuantumCircuit& circuit, const DeviceProperties& device,
                           std::string_view policy = "default");

struct PassStat {
    std::string pass;
    std::size_t ops = 0;
};

struct CompileStats {
    PassPipeline pipeline;
    std::size_t ops_in = 0;
    /// Op count after each pass, in order.
    std::vector<PassStat> per_pass;
    std::size_t ops_out = 0;
    int depth = 0;
    double critical_path_s = 0;
    int swaps = 0;
    /// Pre-compilation estimate from generic op classes.
    double esp_before = 1;
    double esp_after = 1;
};

void to_json(nlohmann::json& j, const CompileStats& s);

struct CompileResult {
    std::string program;
    circuit::QuantumCircuit native;
    circuit::Layout layout;
    CompileStats stats;
};

/// Runs the selected pipeline and lowers to the low-level text form.
/// Errors from the passes propagate.
CompileResult compile(const circuit::QuantumCircuit& circuit, const DeviceProperties& device,
                      const TelemetrySnapshot& snapshot, std::string_view policy = "default");

}  // namespace ministack::compiler
