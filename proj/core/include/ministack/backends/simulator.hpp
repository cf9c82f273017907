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
#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "ministack/backends/profile.hpp"
#include "ministack/circuit/circuit.hpp"
#include "ministack/clock.hpp"
#include "ministack/qdmi/device.hpp"

namespace ministack::backends {

struct SimulatorOptions {
    /// Flip measured bits using the confusion entries of the current
    /// telemetry snapshot.
    bool readout_noise = false;
    /// Probability that an execution throws Error(ExecutionFailed). Drawn
    /// from a stream keyed by failure_seed and the execution counter.
    double failure_rate = 0;
    std::uint64_t failure_seed = 0;
    /// Lower bound on wall time per execution; the wait is cancellable.
    std::chrono::milliseconds min_execution_time{0};
    /// Clock for the snapshot used by readout noise.
    std::shared_ptr<const Clock> clock = std::make_shared<SystemClock>();
};

/// Runs a NATIVE circuit on a dense statevector and returns Counts keyed by
/// the classical register, clbit 0 rightmost. Only qubits the program touches
/// are simulated. Throws Error(Validation) for gates after a measurement on
/// the same qubit, Error(Cancelled) when `cancel` is raised.
Counts simulate(const circuit::QuantumCircuit& program, int shots, std::uint64_t seed,
                const std::vector<std::pair<double, double>>* confusion = nullptr,
                const CancelToken* cancel = nullptr);

class SimulatorDevice final : public DevicePlugin {
public:
    explicit SimulatorDevice(DeviceProfile profile, SimulatorOptions options = {});

    [[nodiscard]] DeviceProperties static_properties() const override { return profile_.properties; }
    [[nodiscard]] TelemetrySnapshot telemetry(Timestamp now) const override;
    Counts execute(std::string_view program, int shots, std::uint64_t seed, const CancelToken& cancel) override;

    // Fault and environment injection for tests and demos.
    void set_temperature_override(std::optional<double> mk);
    void set_calibrated_at_override(std::optional<Timestamp> t);
    /// Replaces the per-qubit confusion (and the derived readout fidelity).
    void set_confusion_override(std::optional<std::vector<std::pair<double, double>>> confusion);
    void set_failure_rate(double rate);

    [[nodiscard]] const DeviceProfile& profile() const { return profile_; }
    [[nodiscard]] std::uint64_t executions() const { return executions_.load(); }
    [[nodiscard]] std::uint64_t injected_failures() const { return injected_failures_.load(); }

private:
    DeviceProfile profile_;
    SimulatorOptions options_;

    mutable std::mutex mu_;
    std::optional<double> temperature_override_;
    std::optional<Timestamp> calibrated_override_;
    std::optional<std::vector<std::pair<double, double>>> confusion_override_;
    double failure_rate_;

    std::atomic<std::uint64_t> executions_{0};
    std::atomic<std::uint64_t> injected_failures_{0};
};

}  // namespace ministack::backends
