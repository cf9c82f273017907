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

#include "ministack/backends/simulator.hpp"

#include <map>
#include <random>
#include <thread>

#include "ministack/backends/statevector.hpp"
#include "ministack/backends/telemetry.hpp"
#include "ministack/circuit/lowlevel.hpp"
#include "ministack/error.hpp"

namespace ministack::backends {
namespace {

constexpr int kCancelCheckGates = 64;
constexpr int kCancelCheckShots = 4096;

void check_cancel(const CancelToken* cancel) {
    if (cancel != nullptr && cancel->requested()) throw Error(ErrorCode::Cancelled, "execution cancelled");
}

}  // namespace

Counts simulate(const circuit::QuantumCircuit& program, int shots, std::uint64_t seed,
                const std::vector<std::pair<double, double>>* confusion, const CancelToken* cancel) {
    if (shots < 1) throw Error(ErrorCode::Validation, "shots must be at least 1");

    // Compact the touched qubits onto 0..k-1 and check measurements are terminal.
    std::vector<int> local(static_cast<std::size_t>(program.num_qubits()), -1);
    std::vector<bool> measured(local.size(), false);
    int k = 0;
    for (const auto& op : program.ops()) {
        if (op.is_barrier()) continue;
        for (int q : op.qubits) {
            if (local[q] < 0) local[q] = k++;
            if (measured[q] && !op.is_measure()) {
                throw Error(ErrorCode::Validation, "'" + op.name + "' on q" + std::to_string(q) +
                                                       " after its measurement; measurements must be terminal");
            }
        }
        if (op.is_measure()) measured[op.qubits[0]] = true;
    }
    if (k > Statevector::kMaxQubits) {
        throw Error(ErrorCode::Validation, "program touches " + std::to_string(k) + " qubits; the simulator handles at most " +
                                               std::to_string(Statevector::kMaxQubits));
    }

    Statevector psi(k);
    std::vector<std::pair<int, int>> readout;  // (physical qubit, clbit)
    int since_check = 0;
    for (const auto& op : program.ops()) {
        if (op.is_measure()) {
            readout.emplace_back(op.qubits[0], op.clbits[0]);
            continue;
        }
        if (!op.is_unitary()) continue;
        auto mapped = op;
        for (int& q : mapped.qubits) q = local[q];
        psi.apply(mapped);
        if (++since_check == kCancelCheckGates) {
            since_check = 0;
            check_cancel(cancel);
        }
    }
    check_cancel(cancel);

    std::mt19937_64 rng(seed);
    const auto indices = sample_indices(psi.probabilities(), shots, rng);
    std::map<std::string, std::uint64_t> counts;
    const std::string zeros(static_cast<std::size_t>(program.num_clbits()), '0');
    const auto width = zeros.size();
    for (int s = 0; s < shots; ++s) {
        std::string key = zeros;
        for (const auto& [q, c] : readout) {
            bool bit = (indices[s] >> local[q]) & 1U;
            if (confusion != nullptr) {
                const auto& [p00, p11] = confusion->at(q);
                const double keep = bit ? p11 : p00;
                if (uniform01(rng) >= keep) bit = !bit;
            }
            key[width - 1 - c] = bit ? '1' : '0';
        }
        ++counts[key];
        if ((s + 1) % kCancelCheckShots == 0) check_cancel(cancel);
    }

    Counts out;
    out.counts = std::move(counts);
    out.shots_total = static_cast<std::uint64_t>(shots);
    return out;
}

SimulatorDevice::SimulatorDevice(DeviceProfile profile, SimulatorOptions options)
    : profile_(std::move(profile)), options_(std::move(options)), failure_rate_(options_.failure_rate) {
    profile_.validate();
    if (!options_.clock) options_.clock = std::make_shared<SystemClock>();
}

TelemetrySnapshot SimulatorDevice::telemetry(Timestamp now) const {
    auto snap = generate_telemetry(profile_, now);
    std::lock_guard lock(mu_);
    if (temperature_override_) snap.temperature_mk = *temperature_override_;
    if (calibrated_override_) snap.calibrated_at = *calibrated_override_;
    if (confusion_override_) {
        snap.confusion = *confusion_override_;
        for (std::size_t q = 0; q < snap.confusion.size() && q < snap.readout_fidelity.size(); ++q) {
            snap.readout_fidelity[q] = (snap.confusion[q].first + snap.confusion[q].second) / 2.0;
        }
    }
    return snap;
}

Counts SimulatorDevice::execute(std::string_view program, int shots, std::uint64_t seed, const CancelToken& cancel) {
    const std::uint64_t n = executions_.fetch_add(1);

    circuit::QuantumCircuit circ;
    try {
        circ = circuit::parse_lowlevel(program);
    } catch (const SyntaxError& e) {
        throw Error(ErrorCode::Validation, std::string("malformed program: ") + e.what());
    }
    validate_program(circ, profile_.properties);

    double rate;
    {
        std::lock_guard lock(mu_);
        rate = failure_rate_;
    }
    if (rate > 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(options_.failure_seed), static_cast<std::uint32_t>(options_.failure_seed >> 32),
                          static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n >> 32)};
        std::mt19937_64 draw(seq);
        if (uniform01(draw) < rate) {
            injected_failures_.fetch_add(1);
            throw Error(ErrorCode::ExecutionFailed, profile_.properties.device_id + ": injected plugin failure");
        }
    }

    const auto deadline = std::chrono::steady_clock::now() + options_.min_execution_time;

    std::vector<std::pair<double, double>> confusion;
    if (options_.readout_noise) confusion = telemetry(options_.clock->now()).confusion;
    auto counts = simulate(circ, shots, seed, options_.readout_noise ? &confusion : nullptr, &cancel);

    while (std::chrono::steady_clock::now() < deadline) {
        check_cancel(&cancel);
        std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
    check_cancel(&cancel);
    return counts;
}

void SimulatorDevice::set_temperature_override(std::optional<double> mk) {
    std::lock_guard lock(mu_);
    temperature_override_ = mk;
}

void SimulatorDevice::set_calibrated_at_override(std::optional<Timestamp> t) {
    std::lock_guard lock(mu_);
    calibrated_override_ = t;
}

void SimulatorDevice::set_confusion_override(std::optional<std::vector<std::pair<double, double>>> confusion) {
    std::lock_guard lock(mu_);
    confusion_override_ = std::move(confusion);
}

void SimulatorDevice::set_failure_rate(double rate) {
    std::lock_guard lock(mu_);
    failure_rate_ = rate;
}

}  // namespace ministack::backends
