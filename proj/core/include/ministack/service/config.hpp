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

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ministack/fomac/fomac.hpp"
#include "ministack/scheduler/select.hpp"

namespace ministack::service {

/// Service configuration file. Every key is optional:
///
///     {
///       "listen": {"host": "127.0.0.1", "port": 8080},
///       "local_cidrs": ["10.0.0.0/8", "127.0.0.0/8"],
///       "gateway_header": "X-Ministack-Gateway",
///       "allow_list": "tokens.txt",
///       "fomac": {"max_temperature_mk": 60, "max_calibration_age_s": 86400},
///       "default_policy": {"w_esp": 0.5, "w_wait": 0.3, "w_exec": 0.2},
///       "max_shots": 100000,
///       "worker_threads": 4,
///       "job_log": "jobs.log",
///       "static_dir": "dashboard/dist",
///       "profiles": ["extra-device.json"],
///       "simulator": {"readout_noise": true, "failure_rate": 0}
///     }
///
/// Relative paths are resolved against the directory holding the file.
struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::vector<std::string> local_cidrs = {"127.0.0.0/8"};
    /// A request carrying this header (any value) counts as LOCAL.
    std::string gateway_header = "X-Ministack-Gateway";
    std::optional<std::filesystem::path> allow_list_path;
    fomac::HealthLimits fomac;
    scheduler::SchedulingPolicy default_policy;
    int max_shots = 100000;
    int worker_threads = 4;
    std::optional<std::filesystem::path> job_log;
    std::optional<std::filesystem::path> static_dir;
    std::vector<std::filesystem::path> profiles;
    bool readout_noise = true;
    double failure_rate = 0;

    /// Throws Error(Config).
    void validate() const;
};

void from_json(const nlohmann::json& j, ServiceConfig& c);

/// Parses and validates a configuration file. Throws Error(Io) or
/// Error(Config).
ServiceConfig load_config(const std::filesystem::path& path);

}  // namespace ministack::service
