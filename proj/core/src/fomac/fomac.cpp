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

#include "ministack/fomac/fomac.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ministack/error.hpp"
#include "ministack/qdmi/qdmi.hpp"

namespace ministack::fomac {
namespace {

struct Mean {
    double sum = 0;
    int n = 0;
    void add(double v) {
        sum += v;
        ++n;
    }
    [[nodiscard]] double value() const { return n == 0 ? 0.0 : sum / n; }
};

struct ClassMeans {
    Mean one_q, two_q, readout;
};

ClassMeans class_means(const TelemetrySnapshot& s) {
    ClassMeans m;
    for (const auto& [key, f] : s.gate_fidelity) (key.qubits.size() == 1 ? m.one_q : m.two_q).add(f);
    for (double r : s.readout_fidelity) m.readout.add(r);
    return m;
}

double require(const Mean& m, const char* what) {
    if (m.n == 0) throw Error(ErrorCode::Validation, std::string("snapshot has no ") + what + " data");
    return m.value();
}

}  // namespace

void to_json(nlohmann::json& j, const HealthLimits& l) {
    j = nlohmann::json{{"max_temperature_mk", l.max_temperature_mk}, {"max_calibration_age_s", l.max_calibration_age_s}};
}

void from_json(const nlohmann::json& j, HealthLimits& l) {
    l.max_temperature_mk = j.value("max_temperature_mk", l.max_temperature_mk);
    l.max_calibration_age_s = j.value("max_calibration_age_s", l.max_calibration_age_s);
}

void to_json(nlohmann::json& j, const FomacReport& r) {
    j = nlohmann::json{{"device_id", r.device_id},
                       {"taken_at", r.taken_at},
                       {"avg_1q_fidelity", r.avg_1q_fidelity},
                       {"avg_2q_fidelity", r.avg_2q_fidelity},
                       {"avg_readout_fidelity", r.avg_readout_fidelity},
                       {"best_qubit_ranking", r.best_qubit_ranking},
                       {"healthy", r.healthy},
                       {"health_reasons", r.health_reasons}};
}

Health environment_health(const TelemetrySnapshot& snapshot, const HealthLimits& limits, Timestamp now) {
    Health h;
    if (snapshot.temperature_mk > limits.max_temperature_mk) h.reasons.emplace_back("temperature");
    if (now - snapshot.calibrated_at > limits.max_calibration_age_s) h.reasons.emplace_back("calibration_age");
    h.healthy = h.reasons.empty();
    return h;
}

FomacReport aggregate(const TelemetrySnapshot& snapshot, int num_qubits, const HealthLimits& limits, Timestamp now) {
    FomacReport r;
    r.device_id = snapshot.device_id;
    r.taken_at = snapshot.taken_at;
    const auto means = class_means(snapshot);
    r.avg_1q_fidelity = means.one_q.value();
    r.avg_2q_fidelity = means.two_q.value();
    r.avg_readout_fidelity = means.readout.value();

    std::vector<Mean> per_qubit(static_cast<std::size_t>(num_qubits));
    for (const auto& [key, f] : snapshot.gate_fidelity) {
        if (key.qubits.size() == 1 && key.qubits[0] >= 0 && key.qubits[0] < num_qubits) per_qubit[key.qubits[0]].add(f);
    }
    std::vector<double> quality(per_qubit.size());
    for (int q = 0; q < num_qubits; ++q) {
        const double readout = q < static_cast<int>(snapshot.readout_fidelity.size()) ? snapshot.readout_fidelity[q] : 0.0;
        const double gates = per_qubit[q].n == 0 ? 1.0 : per_qubit[q].value();
        quality[q] = readout * gates;
    }
    r.best_qubit_ranking.resize(quality.size());
    std::iota(r.best_qubit_ranking.begin(), r.best_qubit_ranking.end(), 0);
    std::stable_sort(r.best_qubit_ranking.begin(), r.best_qubit_ranking.end(),
                     [&](int a, int b) { return quality[a] > quality[b]; });

    const auto health = environment_health(snapshot, limits, now);
    r.healthy = health.healthy;
    r.health_reasons = health.reasons;
    return r;
}

FomacReport aggregate(const Qdmi& qdmi, const DeviceId& device, const HealthLimits& limits) {
    const auto props = qdmi.properties(device);
    return aggregate(qdmi.telemetry(device), props.num_qubits, limits, qdmi.clock().now());
}

double estimate_success_probability(const circuit::QuantumCircuit& native, const TelemetrySnapshot& snapshot) {
    if (native.level() != circuit::Level::Native) {
        throw Error(ErrorCode::Validation, "success probability needs a NATIVE circuit");
    }
    const auto means = class_means(snapshot);
    double esp = 1.0;
    for (const auto& op : native.ops()) {
        if (op.is_barrier()) continue;
        if (op.is_measure()) {
            const int q = op.qubits[0];
            esp *= q < static_cast<int>(snapshot.readout_fidelity.size()) ? snapshot.readout_fidelity[q]
                                                                          : require(means.readout, "readout");
            continue;
        }
        if (auto f = snapshot.fidelity(op.name, op.qubits)) {
            esp *= *f;
        } else {
            esp *= op.qubits.size() == 1 ? require(means.one_q, "1q fidelity") : require(means.two_q, "2q fidelity");
        }
    }
    return std::clamp(esp, 0.0, 1.0);
}

double estimate_generic_success_probability(const circuit::QuantumCircuit& generic, const TelemetrySnapshot& snapshot) {
    const auto means = class_means(snapshot);
    double esp = 1.0;
    for (const auto& op : generic.ops()) {
        if (op.is_barrier() || op.name == "id") continue;
        if (op.is_measure()) {
            esp *= require(means.readout, "readout");
        } else if (op.name == "swap") {
            esp *= std::pow(require(means.two_q, "2q fidelity"), 3);
        } else if (op.qubits.size() == 2) {
            esp *= require(means.two_q, "2q fidelity");
        } else {
            esp *= require(means.one_q, "1q fidelity");
        }
    }
    return std::clamp(esp, 0.0, 1.0);
}

}  // namespace ministack::fomac
