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

#include <atomic>
#include <cstdint>
#include <string_view>

#include "ministack/circuit/circuit.hpp"
#include "ministack/qdmi/types.hpp"

namespace ministack {

/// Cooperative cancellation flag handed to a running execution.
class CancelToken {
public:
    void request() { flag_.store(true, std::memory_order_relaxed); }
    void reset() { flag_.store(false, std::memory_order_relaxed); }
    [[nodiscard]] bool requested() const { return flag_.load(std::memory_order_relaxed); }

private:
    std::atomic<bool> flag_{false};
};

/// What a backend implements to appear in the registry.
///
/// The registry never runs two execute() calls on one plugin at the same
/// time. telemetry() may be called from any thread, including while an
/// execution is in flight, and must not block on it.
class DevicePlugin {
public:
    virtual ~DevicePlugin() = default;

    [[nodiscard]] virtual DeviceProperties static_properties() const = 0;
    [[nodiscard]] virtual TelemetrySnapshot telemetry(Timestamp now) const = 0;
    /// Runs a low-level program. Throws Error(Cancelled) when `cancel` is
    /// raised mid-run, Error(Validation) for programs it cannot run.
    virtual Counts execute(std::string_view program, int shots, std::uint64_t seed, const CancelToken& cancel) = 0;
};

/// Checks that a NATIVE circuit only uses the device's native gates (plus
/// barrier) on in-range qubits, and that every two-qubit gate sits on a
/// coupling edge. Throws Error(Validation).
void validate_program(const circuit::QuantumCircuit& program, const DeviceProperties& device);

}  // namespace ministack
