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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ministack/qdmi/types.hpp"

namespace ministack::backends {

/// Parameters of the synthetic calibration generator.
struct TelemetryModel {
    /// Base fidelity per native gate name, plus "readout".
    std::map<std::string, double> base_fidelities;
    double drift_amplitude = 0;
    double drift_period_s = 86400;
    double noise_sigma = 0;
    std::uint64_t rng_seed = 0;
    double refresh_interval_s = 10;
    double base_t1_s = 50e-6;
    double base_t2_s = 40e-6;
    double base_temperature_mk = 15;
    double temperature_drift_mk = 0;
    double temperature_noise_mk = 0;
    double calibration_period_s = 6 * 3600;
};

struct DeviceProfile {
    DeviceProperties properties;
    TelemetryModel telemetry;

    /// Checks the static properties and that every base fidelity stays in
    /// [0, 1] under maximal drift and 4-sigma noise. Throws
    /// Error(InvalidProperties).
    void validate() const;
};

void to_json(nlohmann::json& j, const TelemetryModel& m);
void from_json(const nlohmann::json& j, TelemetryModel& m);
void to_json(nlohmann::json& j, const DeviceProfile& p);
void from_json(const nlohmann::json& j, DeviceProfile& p);

/// The two shipped profiles, in order: "sc20" (20-qubit 4x5 grid,
/// {prx, cz, measure}) and "ion5" (5 qubits all-to-all,
/// {rz, rx, rxx, measure}). Parsed from the data files under data/profiles.
std::vector<DeviceProfile> builtin_profiles();

/// Loads and validates a profile file. Throws Error(Io) or
/// Error(InvalidProperties).
DeviceProfile load_profile(const std::filesystem::path& path);

}  // namespace ministack::backends
