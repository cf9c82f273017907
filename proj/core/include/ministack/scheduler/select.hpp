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

// Upper scheduling level: Pareto filtering and weighted device selection.

#pragma once

#include <optional>
#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include "ministack/circuit/circuit.hpp"
#include "ministack/fomac/fomac.hpp"
#include "ministack/qdmi/types.hpp"

namespace ministack {
class Qdmi;
}

namespace ministack::scheduler {

struct DeviceCandidate {
    DeviceId device_id;
    double est_wait_s = 0;
    double esp = 1;
    double est_exec_s = 0;
    bool healthy = true;

    bool operator==(const DeviceCandidate&) const = default;
};

struct SchedulingPolicy {
    double w_esp = 0.5;
    double w_wait = 0.3;
    double w_exec = 0.2;
    std::optional<std::set<DeviceId>> allow_list;

    /// Throws Error(InvalidPolicy) unless every weight is finite and
    /// non-negative and they sum to 1 within 1e-9.
    void validate() const;
};

void to_json(nlohmann::json& j, const SchedulingPolicy& p);
/// Missing weights keep their defaults; the result is validated.
void from_json(const nlohmann::json& j, SchedulingPolicy& p);

/// Minimising (est_wait_s, 1 - esp, est_exec_s): a dominates b iff a <= b in
/// every criterion and a < b in at least one.
bool dominates(const DeviceCandidate& a, const DeviceCandidate& b);

/// Non-dominated healthy candidates in input order. Throws NoHealthyDevice
/// when no candidate is healthy, Validation for non-finite or negative
/// fields or esp outside [0, 1].
std::vector<DeviceCandidate> pareto_front(const std::vector<DeviceCandidate>& candidates);

/// Restricts to the allow-list, takes the Pareto front and minimises
/// w_esp*norm(1-esp) + w_wait*norm(wait) + w_exec*norm(exec), each criterion
/// min-max normalised over the front (a constant criterion scores 0). Ties
/// go to the smallest device id. Throws NoHealthyDevice or InvalidPolicy.
DeviceId select_device(const std::vector<DeviceCandidate>& candidates, const SchedulingPolicy& policy);

/// Candidate per registered device wide enough for `generic`, from the
/// current telemetry, FoMaC health, queue load and a pre-compilation
/// execution estimate.
std::vector<DeviceCandidate> build_candidates(const circuit::QuantumCircuit& generic, int shots, const Qdmi& qdmi,
                                              const fomac::HealthLimits& limits);

}  // namespace ministack::scheduler
