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

#include "ministack/service/config.hpp"

#include <fstream>

#include "ministack/error.hpp"
#include "ministack/service/origin.hpp"

namespace ministack::service {

void ServiceConfig::validate() const {
    auto bad = [](const std::string& why) { throw Error(ErrorCode::Config, why); };
    if (port < 0 || port > 65535) bad("listen.port out of range");
    if (max_shots < 1) bad("max_shots must be at least 1");
    if (worker_threads < 1) bad("worker_threads must be at least 1");
    if (!(failure_rate >= 0 && failure_rate <= 1)) bad("simulator.failure_rate must be in [0, 1]");
    if (!(fomac.max_temperature_mk > 0) || !(fomac.max_calibration_age_s > 0)) bad("fomac limits must be positive");
    for (const auto& cidr : local_cidrs) {
        if (!parse_cidr(cidr)) bad("bad CIDR '" + cidr + "'");
    }
    try {
        default_policy.validate();
    } catch (const Error& e) {
        bad(std::string("default_policy: ") + e.what());
    }
}

void from_json(const nlohmann::json& j, ServiceConfig& c) {
    if (j.contains("listen")) {
        const auto& l = j.at("listen");
        c.host = l.value("host", c.host);
        c.port = l.value("port", c.port);
    }
    c.local_cidrs = j.value("local_cidrs", c.local_cidrs);
    c.gateway_header = j.value("gateway_header", c.gateway_header);
    if (j.contains("allow_list")) c.allow_list_path = j.at("allow_list").get<std::string>();
    if (j.contains("fomac")) c.fomac = j.at("fomac").get<fomac::HealthLimits>();
    if (j.contains("default_policy")) c.default_policy = j.at("default_policy").get<scheduler::SchedulingPolicy>();
    c.max_shots = j.value("max_shots", c.max_shots);
    c.worker_threads = j.value("worker_threads", c.worker_threads);
    if (j.contains("job_log")) c.job_log = j.at("job_log").get<std::string>();
    if (j.contains("static_dir")) c.static_dir = j.at("static_dir").get<std::string>();
    if (j.contains("profiles")) {
        c.profiles.clear();
        for (const auto& p : j.at("profiles")) c.profiles.emplace_back(p.get<std::string>());
    }
    if (j.contains("simulator")) {
        const auto& s = j.at("simulator");
        c.readout_noise = s.value("readout_noise", c.readout_noise);
        c.failure_rate = s.value("failure_rate", c.failure_rate);
    }
}

ServiceConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot read config '" + path.string() + "'");
    ServiceConfig c;
    try {
        c = nlohmann::json::parse(in).get<ServiceConfig>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Config, "malformed config '" + path.string() + "': " + e.what());
    } catch (const Error& e) {
        throw Error(ErrorCode::Config, "config '" + path.string() + "': " + e.what());
    }
    const auto base = path.parent_path();
    auto resolve = [&](std::filesystem::path& p) {
        if (p.is_relative()) p = base / p;
    };
    if (c.allow_list_path) resolve(*c.allow_list_path);
    if (c.job_log) resolve(*c.job_log);
    if (c.static_dir) resolve(*c.static_dir);
    for (auto& p : c.profiles) resolve(p);
    c.validate();
    return c;
}

}  // namespace ministack::service
