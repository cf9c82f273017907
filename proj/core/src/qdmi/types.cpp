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

#include "ministack/qdmi/types.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "ministack/error.hpp"

namespace ministack {
namespace {

constexpr std::array<std::pair<JobState, std::string_view>, 8> kStateNames{{
    {JobState::Received, "RECEIVED"},
    {JobState::Scheduled, "SCHEDULED"},
    {JobState::Compiled, "COMPILED"},
    {JobState::Queued, "QUEUED"},
    {JobState::Running, "RUNNING"},
    {JobState::Done, "DONE"},
    {JobState::Failed, "FAILED"},
    {JobState::Cancelled, "CANCELLED"},
}};

}  // namespace

std::string_view job_state_name(JobState state) {
    for (const auto& [s, n] : kStateNames) {
        if (s == state) return n;
    }
    return "UNKNOWN";
}

std::optional<JobState> parse_job_state(std::string_view name) {
    for (const auto& [s, n] : kStateNames) {
        if (n == name) return s;
    }
    return std::nullopt;
}

bool is_terminal(JobState state) {
    return state == JobState::Done || state == JobState::Failed || state == JobState::Cancelled;
}

bool transition_allowed(JobState from, JobState to) {
    if (is_terminal(from)) return false;
    if (to == JobState::Cancelled || to == JobState::Failed) return true;
    switch (from) {
        case JobState::Received: return to == JobState::Scheduled;
        case JobState::Scheduled: return to == JobState::Compiled;
        case JobState::Compiled: return to == JobState::Queued;
        case JobState::Queued: return to == JobState::Running;
        case JobState::Running: return to == JobState::Done;
        default: return false;
    }
}

std::uint64_t Counts::sum() const {
    std::uint64_t total = 0;
    for (const auto& [_, n] : counts) total += n;
    return total;
}

std::optional<Timestamp> JobRecord::entered(JobState s) const {
    for (const auto& [state, at] : transitions) {
        if (state == s) return at;
    }
    return std::nullopt;
}

bool DeviceProperties::has_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(coupling_map.begin(), coupling_map.end(), std::pair{a, b});
}

bool DeviceProperties::is_native(std::string_view gate) const { return native_gates.contains(std::string(gate)); }

double DeviceProperties::duration(std::string_view gate) const {
    auto it = gate_durations.find(std::string(gate));
    return it == gate_durations.end() ? 0.0 : it->second;
}

void DeviceProperties::validate() const {
    auto bad = [&](const std::string& why) { throw Error(ErrorCode::InvalidProperties, device_id + ": " + why); };
    if (device_id.empty()) bad("empty device id");
    if (num_qubits <= 0) bad("num_qubits must be positive");
    if (!native_gates.contains("measure")) bad("native gate set must include measure");
    for (const auto& [a, b] : coupling_map) {
        if (a < 0 || b < 0 || a >= num_qubits || b >= num_qubits) {
            bad("coupling pair (" + std::to_string(a) + "," + std::to_string(b) + ") references a qubit outside 0.." +
                std::to_string(num_qubits - 1));
        }
        if (a >= b) bad("coupling pairs must be stored as (low, high) without self loops");
    }
    if (!std::is_sorted(coupling_map.begin(), coupling_map.end()) ||
        std::adjacent_find(coupling_map.begin(), coupling_map.end()) != coupling_map.end()) {
        bad("coupling map must be sorted and duplicate-free");
    }
    for (const auto& [gate, arity] : native_gates) {
        if (arity < 1 || arity > 2) bad("gate '" + gate + "' has unsupported arity");
        if (arity == 2 && !gate_durations.contains(gate)) bad("two-qubit gate '" + gate + "' has no duration");
    }
    for (const auto& [gate, d] : gate_durations) {
        if (!(d >= 0)) bad("negative duration for '" + gate + "'");
    }
    if (!(shot_overhead >= 0) || !(setup_overhead >= 0)) bad("negative overhead");
}

std::optional<double> TelemetrySnapshot::fidelity(std::string_view gate, std::vector<int> qubits) const {
    if (qubits.size() == 2 && qubits[0] > qubits[1]) std::swap(qubits[0], qubits[1]);
    auto it = gate_fidelity.find(GateKey{std::string(gate), std::move(qubits)});
    if (it == gate_fidelity.end()) return std::nullopt;
    return it->second;
}

void to_json(nlohmann::json& j, const Counts& c) {
    j = nlohmann::json{{"counts", c.counts}, {"shots", c.shots_total}};
}

void from_json(const nlohmann::json& j, Counts& c) {
    c.counts = j.at("counts").get<std::map<std::string, std::uint64_t>>();
    c.shots_total = j.at("shots").get<std::uint64_t>();
}

void to_json(nlohmann::json& j, const DeviceProperties& p) {
    nlohmann::json coupling = nlohmann::json::array();
    for (const auto& [a, b] : p.coupling_map) coupling.push_back({a, b});
    j = nlohmann::json{{"device_id", p.device_id},
                       {"display_name", p.display_name},
                       {"num_qubits", p.num_qubits},
                       {"native_gates", p.native_gates},
                       {"coupling_map", coupling},
                       {"gate_durations", p.gate_durations},
                       {"shot_overhead", p.shot_overhead},
                       {"setup_overhead", p.setup_overhead}};
}

void from_json(const nlohmann::json& j, DeviceProperties& p) {
    p.device_id = j.at("device_id").get<std::string>();
    p.display_name = j.value("display_name", p.device_id);
    p.num_qubits = j.at("num_qubits").get<int>();
    p.native_gates = j.at("native_gates").get<std::map<std::string, int>>();
    std::set<std::pair<int, int>> edges;
    for (const auto& e : j.at("coupling_map")) {
        int a = e.at(0).get<int>(), b = e.at(1).get<int>();
        if (a > b) std::swap(a, b);
        edges.emplace(a, b);
    }
    p.coupling_map.assign(edges.begin(), edges.end());
    p.gate_durations = j.at("gate_durations").get<std::map<std::string, double>>();
    p.shot_overhead = j.at("shot_overhead").get<double>();
    p.setup_overhead = j.at("setup_overhead").get<double>();
}

void to_json(nlohmann::json& j, const TelemetrySnapshot& s) {
    nlohmann::json fid = nlohmann::json::array();
    for (const auto& [key, f] : s.gate_fidelity) fid.push_back({{"gate", key.gate}, {"qubits", key.qubits}, {"fidelity", f}});
    nlohmann::json confusion = nlohmann::json::array();
    for (const auto& [p00, p11] : s.confusion) confusion.push_back({p00, p11});
    j = nlohmann::json{{"device_id", s.device_id},
                       {"taken_at", s.taken_at},
                       {"gate_fidelity", fid},
                       {"t1", s.t1},
                       {"t2", s.t2},
                       {"readout_fidelity", s.readout_fidelity},
                       {"confusion", confusion},
                       {"temperature_mK", s.temperature_mk},
                       {"calibrated_at", s.calibrated_at}};
}

void from_json(const nlohmann::json& j, TelemetrySnapshot& s) {
    s.device_id = j.at("device_id").get<std::string>();
    s.taken_at = j.at("taken_at").get<double>();
    s.gate_fidelity.clear();
    for (const auto& e : j.at("gate_fidelity")) {
        s.gate_fidelity[GateKey{e.at("gate").get<std::string>(), e.at("qubits").get<std::vector<int>>()}] =
            e.at("fidelity").get<double>();
    }
    s.t1 = j.at("t1").get<std::vector<double>>();
    s.t2 = j.at("t2").get<std::vector<double>>();
    s.readout_fidelity = j.at("readout_fidelity").get<std::vector<double>>();
    s.confusion.clear();
    for (const auto& c : j.at("confusion")) s.confusion.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    s.temperature_mk = j.at("temperature_mK").get<double>();
    s.calibrated_at = j.at("calibrated_at").get<double>();
}

void to_json(nlohmann::json& j, const JobRecord& r) {
    nlohmann::json transitions = nlohmann::json::array();
    for (const auto& [state, at] : r.transitions) {
        transitions.push_back({{"state", job_state_name(state)}, {"at", at}});
    }
    j = nlohmann::json{{"job_id", r.job_id},
                       {"device_id", r.device_id.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.device_id)},
                       {"state", job_state_name(r.state)},
                       {"shots", r.shots},
                       {"priority", r.priority},
                       {"seq", r.seq},
                       {"seed", r.seed},
                       {"est_exec_s", r.est_exec_s},
                       {"transitions", transitions},
                       {"program", r.program}};
    if (r.error) j["error"] = *r.error;
}

}  // namespace ministack
