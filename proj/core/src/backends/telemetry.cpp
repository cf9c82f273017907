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

#include "ministack/backends/telemetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ministack::backends {
namespace {

std::uint64_t splitmix(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    std::uint64_t s = h ^ v;
    return splitmix(s);
}

double unit(std::uint64_t& state) {
    // (0, 1], safe for log()
    return (static_cast<double>(splitmix(state) >> 11) + 1.0) * 0x1.0p-53;
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double keyed_gaussian(std::uint64_t seed, std::string_view tag, const std::vector<int>& qubits,
                      std::int64_t bucket) {
    std::uint64_t h = mix(0x6d696e69ULL, seed);
    for (unsigned char c : tag) h = mix(h, c);
    h = mix(h, 0xffULL);
    for (int q : qubits) h = mix(h, static_cast<std::uint64_t>(q));
    h = mix(h, static_cast<std::uint64_t>(bucket));
    // Box-Muller on two draws from the keyed stream.
    const double u1 = unit(h);
    const double u2 = unit(h);
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return std::clamp(z, -4.0, 4.0);
}

TelemetrySnapshot generate_telemetry(const DeviceProfile& profile, Timestamp now) {
    const auto& m = profile.telemetry;
    const auto& props = profile.properties;
    const auto bucket = static_cast<std::int64_t>(std::floor(now / m.refresh_interval_s));
    const double t = static_cast<double>(bucket) * m.refresh_interval_s;
    const double wave = std::sin(2.0 * std::numbers::pi * t / m.drift_period_s);

    auto sample = [&](const std::string& tag, double base, const std::vector<int>& qubits) {
        return clamp01(base + m.drift_amplitude * wave + m.noise_sigma * keyed_gaussian(m.rng_seed, tag, qubits, bucket));
    };

    TelemetrySnapshot s;
    s.device_id = props.device_id;
    s.taken_at = t;
    for (const auto& [gate, arity] : props.native_gates) {
        if (gate == "measure") continue;
        const double base = m.base_fidelities.at(gate);
        if (arity == 1) {
            for (int q = 0; q < props.num_qubits; ++q) s.gate_fidelity[GateKey{gate, {q}}] = sample(gate, base, {q});
        } else {
            for (const auto& [a, b] : props.coupling_map) s.gate_fidelity[GateKey{gate, {a, b}}] = sample(gate, base, {a, b});
        }
    }

    const double readout = m.base_fidelities.at("readout");
    for (int q = 0; q < props.num_qubits; ++q) {
        const double rf = sample("readout", readout, {q});
        s.readout_fidelity.push_back(rf);
        // Reading 0 is more reliable than reading 1; the mean stays rf.
        const double p00 = std::min(1.0, rf + (1.0 - rf) / 2.0);
        s.confusion.emplace_back(p00, clamp01(2.0 * rf - p00));
        const double t1 = m.base_t1_s * (1.0 + 0.1 * keyed_gaussian(m.rng_seed, "t1", {q}, bucket));
        const double t2 = m.base_t2_s * (1.0 + 0.1 * keyed_gaussian(m.rng_seed, "t2", {q}, bucket));
        s.t1.push_back(t1);
        s.t2.push_back(std::min(t2, 2.0 * t1));
    }

    s.temperature_mk = std::max(0.0, m.base_temperature_mk + m.temperature_drift_mk * wave +
                                         m.temperature_noise_mk * keyed_gaussian(m.rng_seed, "temperature", {}, bucket));
    s.calibrated_at = std::floor(t / m.calibration_period_s) * m.calibration_period_s;
    return s;
}

}  // namespace ministack::backends
