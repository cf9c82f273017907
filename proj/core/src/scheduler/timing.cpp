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

#include "ministack/scheduler/timing.hpp"

#include <algorithm>

namespace ministack::scheduler {

double critical_path_duration(const circuit::QuantumCircuit& circuit, const DurationFn& duration) {
    std::vector<int> frontier(circuit.num_qubits(), 0);
    std::vector<double> layer_max;
    for (const auto& op : circuit.ops()) {
        int layer = 0;
        for (int q : op.qubits) layer = std::max(layer, frontier[q]);
        if (op.is_barrier()) {
            for (int q : op.qubits) frontier[q] = layer;
            continue;
        }
        if (static_cast<int>(layer_max.size()) <= layer) layer_max.resize(layer + 1, 0.0);
        layer_max[layer] = std::max(layer_max[layer], duration(op));
        for (int q : op.qubits) frontier[q] = layer + 1;
    }
    double total = 0;
    for (double d : layer_max) total += d;
    return total;
}

double critical_path_duration(const circuit::QuantumCircuit& native, const DeviceProperties& device) {
    return critical_path_duration(native, [&](const circuit::GateOp& op) { return device.duration(op.name); });
}

double generic_critical_path(const circuit::QuantumCircuit& generic, const DeviceProperties& device) {
    double one = 0, two = 0;
    for (const auto& [gate, arity] : device.native_gates) {
        if (gate == "measure") continue;
        double& slot = arity == 1 ? one : two;
        slot = std::max(slot, device.duration(gate));
    }
    return critical_path_duration(generic, [&](const circuit::GateOp& op) {
        if (op.is_measure()) return device.duration("measure");
        if (op.name == "id") return 0.0;
        if (op.name == "swap") return 3 * two;
        return op.qubits.size() == 2 ? two : one;
    });
}

double estimate_execution_time(double critical_path_s, int shots, const DeviceProperties& device) {
    return device.setup_overhead + shots * (critical_path_s + device.shot_overhead);
}

double estimate_wait(const DeviceLoad& load, Timestamp now) {
    double wait = 0;
    for (double e : load.queued_estimates) wait += std::max(0.0, e);
    if (load.running) wait += std::max(0.0, load.running->started_at + load.running->est_exec_s - now);
    return wait;
}

}  // namespace ministack::scheduler
