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

#include "ministack/error.hpp"
#include "ministack/qdmi/device.hpp"

namespace ministack {

void validate_program(const circuit::QuantumCircuit& program, const DeviceProperties& device) {
    auto bad = [](const std::string& why) { throw Error(ErrorCode::Validation, why); };
    if (program.level() != circuit::Level::Native) bad("program is not at NATIVE level");
    if (program.device() != device.device_id) {
        bad("program targets device '" + program.device() + "', not '" + device.device_id + "'");
    }
    if (program.num_qubits() > device.num_qubits) {
        bad("program declares " + std::to_string(program.num_qubits()) + " qubits; device has " +
            std::to_string(device.num_qubits));
    }
    if (!program.layout().valid_for(device.num_qubits) || !program.final_layout().valid_for(device.num_qubits)) {
        bad("layout is not injective onto device qubits");
    }
    for (const auto& op : program.ops()) {
        for (int q : op.qubits) {
            if (q < 0 || q >= device.num_qubits) bad("qubit q" + std::to_string(q) + " does not exist");
        }
        if (op.is_barrier()) continue;
        if (!device.is_native(op.name)) bad("gate '" + op.name + "' is not native to " + device.device_id);
        if (op.qubits.size() == 2 && !device.has_edge(op.qubits[0], op.qubits[1])) {
            bad(op.name + " on q" + std::to_string(op.qubits[0]) + ",q" + std::to_string(op.qubits[1]) +
                " is not a coupling edge of " + device.device_id);
        }
    }
}

}  // namespace ministack
