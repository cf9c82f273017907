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

// Figures of merit and constraints derived from raw telemetry.

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ministack/circuit/circuit.hpp"
#include "ministack/clock.hpp"
#include "ministack/qdmi/types.hpp"

namespace ministack {
class Qdmi;
}

namespace ministack::fomac {

struct HealthLimits {
    double max_temperature_mk = 60;
    double max_calibration_age_s = 24 * 3600;
};

struct Health {
    bool healthy = true;
    /// "temperature" and/or "calibration_age".
    std::vector<std::string> reasons;
};

struct FomacReport {
    DeviceId device_id;
    Timestamp taken_at = 0;
    double avg_1q_fidelity = 0;
    double avg_2q_fidelity = 0;
    double avg_readout_fidelity = 0;
    std::vector<int> best_qubit_ranking;
    bool healthy = true;
    std::vector<std::string> health_reasons;

    bool operator==(const FomacReport&) const = default;
};

void to_json(nlohmann::json& j, const HealthLimits& l);
void from_json(const nlohmann::json& j, HealthLimits& l);
void to_json(nlohmann::json& j, const FomacReport& r);

Health environment_health(const TelemetrySnapshot& snapshot, const HealthLimits& limits, Timestamp now);

/// Means over the snapshot, per-qubit quality ranking, and health at `now`.
/// Quality is readout_fidelity(q) times the mean 1q gate fidelity on q;
/// ranking is descending with ties to the lower index.
FomacReport aggregate(const TelemetrySnapshot& snapshot, int num_qubits, const HealthLimits& limits, Timestamp now);

/// Aggregates the device's current snapshot. Throws UnknownDevice.
FomacReport aggregate(const Qdmi& qdmi, const DeviceId& device, const HealthLimits& limits = {});

/// Product of gate fidelities over unitary ops and readout fidelities over
/// measured qubits. Missing gate entries use the mean of the same arity
/// class; missing readout entries use the mean readout fidelity. Throws
/// Validation for a GENERIC circuit or when a class has no data at all.
double estimate_success_probability(const circuit::QuantumCircuit& native, const TelemetrySnapshot& snapshot);

/// Pre-compilation estimate for a GENERIC circuit: every 1q op costs the
/// mean 1q fidelity, every 2q op the mean 2q fidelity (swap three times),
/// id nothing, and each measure the mean readout fidelity.
double estimate_generic_success_probability(const circuit::QuantumCircuit& generic, const TelemetrySnapshot& snapshot);

}  // namespace ministack::fomac
