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

#include <functional>
#include <optional>
#include <vector>

#include "ministack/circuit/circuit.hpp"
#include "ministack/qdmi/types.hpp"

namespace ministack::scheduler {

using DurationFn = std::function<double(const circuit::GateOp&)>;

/// Sum over ASAP layers of the longest gate duration in each layer.
/// Barriers synchronise their qubits without opening a layer.
double critical_path_duration(const circuit::QuantumCircuit& circuit, const DurationFn& duration);

/// Critical path of a NATIVE circuit using the device's gate durations.
double critical_path_duration(const circuit::QuantumCircuit& native, const DeviceProperties& device);

/// Pre-compilation estimate for a GENERIC circuit: every one-qubit gate is
/// charged the slowest native one-qubit gate, every two-qubit gate the
/// slowest native two-qubit gate (swap three times that).
double generic_critical_path(const circuit::QuantumCircuit& generic, const DeviceProperties& device);

/// setup_overhead + shots * (critical_path + shot_overhead).
double estimate_execution_time(double critical_path_s, int shots, const DeviceProperties& device);

struct RunningJob {
    Timestamp started_at = 0;
    double est_exec_s = 0;
};

/// What is ahead of a new submission on one device.
struct DeviceLoad {
    std::vector<double> queued_estimates;
    std::optional<RunningJob> running;
};

/// Queued estimates plus the running job's remaining estimate (floored at 0).
double estimate_wait(const DeviceLoad& load, Timestamp now);

}  // namespace ministack::scheduler
