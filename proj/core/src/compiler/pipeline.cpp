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

#include "ministack/compiler/pipeline.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "ministack/circuit/lowlevel.hpp"
#include "ministack/compiler/passes.hpp"
#include "ministack/error.hpp"
#include "ministack/fomac/fomac.hpp"
#include "ministack/scheduler/timing.hpp"

namespace ministack::compiler {
namespace {

std::mutex g_selectors_mu;

std::map<std::string, PassSelector, std::less<>>& selectors() {
    static std::map<std::string, PassSelector, std::less<>> s = {
        {"default",
         [](std::uint64_t, const DeviceId&) {
             return std::vector<std::string>{"cancel", "commute_reorder", "cancel", "fuse_1q"};
         }},
        {"none", [](std::uint64_t, const DeviceId&) { return std::vector<std::string>{}; }},
    };
    return s;
}

std::uint64_t hash_inputs(std::uint64_t digest, const DeviceId& device) {
    std::uint64_t h = 1469598103934665603ULL;
    for (int i = 0; i < 8; ++i) {
        h ^= (digest >> (8 * i)) & 0xff;
        h *= 1099511628211ULL;
    }
    for (unsigned char ch : device) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::vector<std::string> PassPipeline::names() const {
    std::vector<std::string> out;
    for (const auto& p : passes) out.push_back(p.name);
    return out;
}

const std::vector<std::string>& agnostic_pass_names() {
    static const std::vector<std::string> names = {"cancel", "commute_reorder", "fuse_1q"};
    return names;
}

const std::vector<std::string>& specific_pass_names() {
    static const std::vector<std::string> names = {"basis_translate", "place", "route"};
    return names;
}

void register_pass_selector(const std::string& name, PassSelector selector) {
    if (name == "default" || name == "none") throw Error(ErrorCode::Validation, "selector '" + name + "' is built in");
    std::lock_guard lock(g_selectors_mu);
    selectors()[name] = std::move(selector);
}

PassPipeline select_passes(const circuit::QuantumCircuit& circuit, const DeviceProperties& device,
                           std::string_view policy) {
    PassSelector selector;
    {
        std::lock_guard lock(g_selectors_mu);
        auto it = selectors().find(policy);
        if (it == selectors().end()) throw Error(ErrorCode::UnknownPolicy, "unknown pass policy '" + std::string(policy) + "'");
        selector = it->second;
    }
    const auto digest = circuit.digest();
    PassPipeline pipeline;
    pipeline.selector = std::string(policy);
    pipeline.inputs_hash = hash_inputs(digest, device.device_id);
    const auto& agnostic = agnostic_pass_names();
    const auto& specific = specific_pass_names();
    for (auto& name : selector(digest, device.device_id)) {
        if (std::find(specific.begin(), specific.end(), name) != specific.end()) continue;
        if (std::find(agnostic.begin(), agnostic.end(), name) == agnostic.end()) {
            throw Error(ErrorCode::UnknownPass, "selector '" + pipeline.selector + "' returned unknown pass '" + name + "'");
        }
        pipeline.passes.push_back({std::move(name), Stage::Agnostic});
    }
    for (const auto& name : specific) pipeline.passes.push_back({name, Stage::Specific});
    return pipeline;
}

void to_json(nlohmann::json& j, const CompileStats& s) {
    nlohmann::json per_pass = nlohmann::json::array();
    for (const auto& p : s.per_pass) per_pass.push_back({{"pass", p.pass}, {"ops", p.ops}});
    j = nlohmann::json{{"pipeline", s.pipeline.names()},
                       {"selector", s.pipeline.selector},
                       {"inputs_hash", s.pipeline.inputs_hash},
                       {"ops_in", s.ops_in},
                       {"per_pass", per_pass},
                       {"ops_out", s.ops_out},
                       {"depth", s.depth},
                       {"critical_path_s", s.critical_path_s},
                       {"swaps", s.swaps},
                       {"esp_before", s.esp_before},
                       {"esp_after", s.esp_after}};
}

CompileResult compile(const circuit::QuantumCircuit& circuit, const DeviceProperties& device,
                      const TelemetrySnapshot& snapshot, std::string_view policy) {
    if (circuit.level() != circuit::Level::Generic) throw Error(ErrorCode::Level, "compile expects a GENERIC circuit");
    CompileResult result;
    auto& stats = result.stats;
    stats.pipeline = select_passes(circuit, device, policy);
    stats.ops_in = circuit.size();
    stats.esp_before = fomac::estimate_generic_success_probability(circuit, snapshot);

    auto current = circuit;
    circuit::Layout layout;
    for (const auto& pass : stats.pipeline.passes) {
        if (pass.name == "cancel") {
            current = pass_cancel_inverse_pairs(current);
        } else if (pass.name == "commute_reorder") {
            current = pass_commute_reorder(current);
        } else if (pass.name == "fuse_1q") {
            current = pass_fuse_1q(current);
        } else if (pass.name == "basis_translate") {
            current = pass_basis_translate(current, device.native_gates);
        } else if (pass.name == "place") {
            layout = pass_place(current, device, snapshot);
        } else if (pass.name == "route") {
            auto routed = pass_route(current, layout, device, snapshot);
            current = std::move(routed.circuit);
            stats.swaps = routed.swaps;
        }
        stats.per_pass.push_back({pass.name, current.size()});
    }

    stats.ops_out = current.size();
    stats.depth = current.depth();
    stats.critical_path_s = scheduler::critical_path_duration(current, device);
    stats.esp_after = fomac::estimate_success_probability(current, snapshot);
    result.program = circuit::emit_lowlevel(current);
    result.layout = layout;
    result.native = std::move(current);
    return result;
}

}  // namespace ministack::compiler
