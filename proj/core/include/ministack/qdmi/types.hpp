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

// Value types shared by the device interface, the backends and everything
// above them.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ministack/clock.hpp"

namespace ministack {

using DeviceId = std::string;
using JobId = std::string;
using SessionId = std::string;

struct Session {
    SessionId session_id;
    std::string owner;
    Timestamp created_at = 0;
    bool open = true;
};

enum class JobState { Received, Scheduled, Compiled, Queued, Running, Done, Failed, Cancelled };

std::string_view job_state_name(JobState state);
std::optional<JobState> parse_job_state(std::string_view name);
bool is_terminal(JobState state);
/// Edges of the job lifecycle: the forward chain
/// RECEIVED -> SCHEDULED -> COMPILED -> QUEUED -> RUNNING -> DONE, plus
/// FAILED and CANCELLED from every non-terminal state.
bool transition_allowed(JobState from, JobState to);

/// Measurement histogram. Keys are fixed-width bitstrings with clbit 0 as the
/// rightmost character.
struct Counts {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t shots_total = 0;

    [[nodiscard]] std::uint64_t sum() const;
    bool operator==(const Counts&) const = default;
};

struct JobRecord {
    JobId job_id;
    SessionId session_id;
    std::string owner;
    DeviceId device_id;
    std::string program;
    int shots = 0;
    int priority = 0;
    JobState state = JobState::Received;
    std::uint64_t seq = 0;
    std::uint64_t seed = 0;
    double est_exec_s = 0;
    std::vector<std::pair<JobState, Timestamp>> transitions;
    std::optional<Counts> result;
    std::optional<std::string> error;

    [[nodiscard]] std::optional<Timestamp> entered(JobState state) const;
};

/// Static device capabilities.
struct DeviceProperties {
    DeviceId device_id;
    std::string display_name;
    int num_qubits = 0;
    /// gate identifier -> number of qubits it acts on (measure included).
    std::map<std::string, int> native_gates;
    /// Undirected physical pairs, stored with first < second, sorted.
    std::vector<std::pair<int, int>> coupling_map;
    /// Seconds per gate; gates without an entry take no time.
    std::map<std::string, double> gate_durations;
    double shot_overhead = 0;
    double setup_overhead = 0;

    [[nodiscard]] bool has_edge(int a, int b) const;
    [[nodiscard]] bool is_native(std::string_view gate) const;
    [[nodiscard]] double duration(std::string_view gate) const;
    /// Throws Error(InvalidProperties) describing the first violation.
    void validate() const;
};

/// (gate, qubits) key of a fidelity entry. Two-qubit keys are stored with
/// ascending qubits.
struct GateKey {
    std::string gate;
    std::vector<int> qubits;

    auto operator<=>(const GateKey&) const = default;
};

/// Dynamic, time-stamped calibration and sensor data.
struct TelemetrySnapshot {
    DeviceId device_id;
    Timestamp taken_at = 0;
    std::map<GateKey, double> gate_fidelity;
    std::vector<double> t1;
    std::vector<double> t2;
    std::vector<double> readout_fidelity;
    /// Per qubit (p(read 0 | prepared 0), p(read 1 | prepared 1)).
    std::vector<std::pair<double, double>> confusion;
    double temperature_mk = 0;
    Timestamp calibrated_at = 0;

    /// Fidelity for a gate on qubits, order-insensitive for 2-qubit keys.
    [[nodiscard]] std::optional<double> fidelity(std::string_view gate, std::vector<int> qubits) const;
    bool operator==(const TelemetrySnapshot&) const = default;
};

void to_json(nlohmann::json& j, const Counts& c);
void from_json(const nlohmann::json& j, Counts& c);
void to_json(nlohmann::json& j, const DeviceProperties& p);
void from_json(const nlohmann::json& j, DeviceProperties& p);
void to_json(nlohmann::json& j, const TelemetrySnapshot& s);
void from_json(const nlohmann::json& j, TelemetrySnapshot& s);
void to_json(nlohmann::json& j, const JobRecord& r);

}  // namespace ministack
