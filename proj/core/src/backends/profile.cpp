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

#include "ministack/backends/profile.hpp"

#include <fstream>

#include "ministack/data/profile_ion5.hpp"
#include "ministack/data/profile_sc20.hpp"
#include "ministack/error.hpp"

namespace ministack::backends {

void DeviceProfile::validate() const {
    properties.validate();
    const auto& m = telemetry;
    auto bad = [&](const std::string& why) {
        throw Error(ErrorCode::InvalidProperties, properties.device_id + ": " + why);
    };
    if (!(m.refresh_interval_s > 0)) bad("refresh_interval_s must be positive");
    if (!(m.drift_period_s > 0)) bad("drift_period_s must be positive");
    if (!(m.calibration_period_s > 0)) bad("calibration_period_s must be positive");
    if (m.drift_amplitude < 0 || m.noise_sigma < 0) bad("drift amplitude and noise sigma must be non-negative");
    if (!m.base_fidelities.contains("readout")) bad("base_fidelities needs a 'readout' entry");
    for (const auto& [gate, arity] : properties.native_gates) {
        if (gate != "measure" && !m.base_fidelities.contains(gate)) bad("no base fidelity for '" + gate + "'");
    }
    const double spread = m.drift_amplitude + 4 * m.noise_sigma;
    for (const auto& [gate, base] : m.base_fidelities) {
        if (base - spread < 0 || base + spread > 1) {
            bad("base fidelity of '" + gate + "' +/- drift +/- 4 sigma leaves [0, 1]");
        }
    }
    if (m.base_t1_s <= 0 || m.base_t2_s <= 0) bad("coherence times must be positive");
}

void to_json(nlohmann::json& j, const TelemetryModel& m) {
    j = nlohmann::json{{"base_fidelities", m.base_fidelities},
                       {"drift_amplitude", m.drift_amplitude},
                       {"drift_period_s", m.drift_period_s},
                       {"noise_sigma", m.noise_sigma},
                       {"rng_seed", m.rng_seed},
                       {"refresh_interval_s", m.refresh_interval_s},
                       {"base_t1_s", m.base_t1_s},
                       {"base_t2_s", m.base_t2_s},
                       {"base_temperature_mK", m.base_temperature_mk},
                       {"temperature_drift_mK", m.temperature_drift_mk},
                       {"temperature_noise_mK", m.temperature_noise_mk},
                       {"calibration_period_s", m.calibration_period_s}};
}

void from_json(const nlohmann::json& j, TelemetryModel& m) {
    m.base_fidelities = j.at("base_fidelities").get<std::map<std::string, double>>();
    m.drift_amplitude = j.at("drift_amplitude").get<double>();
    m.drift_period_s = j.at("drift_period_s").get<double>();
    m.noise_sigma = j.at("noise_sigma").get<double>();
    m.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    m.refresh_interval_s = j.value("refresh_interval_s", 10.0);
    m.base_t1_s = j.value("base_t1_s", m.base_t1_s);
    m.base_t2_s = j.value("base_t2_s", m.base_t2_s);
    m.base_temperature_mk = j.value("base_temperature_mK", m.base_temperature_mk);
    m.temperature_drift_mk = j.value("temperature_drift_mK", 0.0);
    m.temperature_noise_mk = j.value("temperature_noise_mK", 0.0);
    m.calibration_period_s = j.value("calibration_period_s", m.calibration_period_s);
}

void to_json(nlohmann::json& j, const DeviceProfile& p) {
    j = nlohmann::json{{"properties", p.properties}, {"telemetry", p.telemetry}};
}

void from_json(const nlohmann::json& j, DeviceProfile& p) {
    p.properties = j.at("properties").get<DeviceProperties>();
    p.telemetry = j.at("telemetry").get<TelemetryModel>();
}

std::vector<DeviceProfile> builtin_profiles() {
    std::vector<DeviceProfile> out;
    for (auto text : {data::k_profile_sc20, data::k_profile_ion5}) {
        auto p = nlohmann::json::parse(text).get<DeviceProfile>();
        p.validate();
        out.push_back(std::move(p));
    }
    return out;
}

DeviceProfile load_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot read profile '" + path.string() + "'");
    DeviceProfile p;
    try {
        p = nlohmann::json::parse(in).get<DeviceProfile>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidProperties, "malformed profile '" + path.string() + "': " + e.what());
    }
    p.validate();
    return p;
}

}  // namespace ministack::backends
