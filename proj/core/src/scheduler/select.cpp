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

#include "ministack/scheduler/select.hpp"

#include <algorithm>
#include <cmath>

#include "ministack/error.hpp"
#include "ministack/qdmi/qdmi.hpp"
#include "ministack/scheduler/timing.hpp"

namespace ministack::scheduler {
namespace {

void check_candidate(const DeviceCandidate& c) {
    const bool ok = std::isfinite(c.est_wait_s) && std::isfinite(c.est_exec_s) && std::isfinite(c.esp) &&
                    c.est_wait_s >= 0 && c.est_exec_s >= 0 && c.esp >= 0 && c.esp <= 1;
    if (!ok) throw Error(ErrorCode::Validation, "invalid candidate '" + c.device_id + "'");
}

struct Range {
    double lo = 0, hi = 0;
    [[nodiscard]] double norm(double x) const { return hi > lo ? (x - lo) / (hi - lo) : 0.0; }
};

}  // namespace

void SchedulingPolicy::validate() const {
    for (double w : {w_esp, w_wait, w_exec}) {
        if (!std::isfinite(w) || w < 0) throw Error(ErrorCode::InvalidPolicy, "policy weights must be non-negative");
    }
    if (std::abs(w_esp + w_wait + w_exec - 1.0) > 1e-9) throw Error(ErrorCode::InvalidPolicy, "policy weights must sum to 1");
}

void to_json(nlohmann::json& j, const SchedulingPolicy& p) {
    j = nlohmann::json{{"w_esp", p.w_esp}, {"w_wait", p.w_wait}, {"w_exec", p.w_exec}};
    if (p.allow_list) j["allow_list"] = *p.allow_list;
}

void from_json(const nlohmann::json& j, SchedulingPolicy& p) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidPolicy, "policy must be an object");
    try {
        p.w_esp = j.value("w_esp", p.w_esp);
        p.w_wait = j.value("w_wait", p.w_wait);
        p.w_exec = j.value("w_exec", p.w_exec);
        if (j.contains("allow_list")) p.allow_list = j.at("allow_list").get<std::set<DeviceId>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidPolicy, std::string("malformed policy: ") + e.what());
    }
    p.validate();
}

bool dominates(const DeviceCandidate& a, const DeviceCandidate& b) {
    const double fa[3] = {a.est_wait_s, 1.0 - a.esp, a.est_exec_s};
    const double fb[3] = {b.est_wait_s, 1.0 - b.esp, b.est_exec_s};
    bool strictly = false;
    for (int k = 0; k < 3; ++k) {
        if (fa[k] > fb[k]) return false;
        strictly |= fa[k] < fb[k];
    }
    return strictly;
}

std::vector<DeviceCandidate> pareto_front(const std::vector<DeviceCandidate>& candidates) {
    std::vector<DeviceCandidate> healthy;
    for (const auto& c : candidates) {
        check_candidate(c);
        if (c.healthy) healthy.push_back(c);
    }
    if (healthy.empty()) throw Error(ErrorCode::NoHealthyDevice, "no healthy device among the candidates");
    std::vector<DeviceCandidate> front;
    for (const auto& c : healthy) {
        const bool dominated =
            std::any_of(healthy.begin(), healthy.end(), [&](const DeviceCandidate& o) { return dominates(o, c); });
        if (!dominated) front.push_back(c);
    }
    return front;
}

DeviceId select_device(const std::vector<DeviceCandidate>& candidates, const SchedulingPolicy& policy) {
    policy.validate();
    std::vector<DeviceCandidate> allowed;
    for (const auto& c : candidates) {
        if (!policy.allow_list || policy.allow_list->contains(c.device_id)) allowed.push_back(c);
    }
    const auto front = pareto_front(allowed);

    Range err{1.0 - front[0].esp, 1.0 - front[0].esp}, wait{front[0].est_wait_s, front[0].est_wait_s},
        exec{front[0].est_exec_s, front[0].est_exec_s};
    for (const auto& c : front) {
        err.lo = std::min(err.lo, 1.0 - c.esp);
        err.hi = std::max(err.hi, 1.0 - c.esp);
        wait.lo = std::min(wait.lo, c.est_wait_s);
        wait.hi = std::max(wait.hi, c.est_wait_s);
        exec.lo = std::min(exec.lo, c.est_exec_s);
        exec.hi = std::max(exec.hi, c.est_exec_s);
    }
    const DeviceCandidate* best = nullptr;
    double best_score = 0;
    for (const auto& c : front) {
        const double score = policy.w_esp * err.norm(1.0 - c.esp) + policy.w_wait * wait.norm(c.est_wait_s) +
                             policy.w_exec * exec.norm(c.est_exec_s);
        if (best == nullptr || score < best_score || (score == best_score && c.device_id < best->device_id)) {
            best = &c;
            best_score = score;
        }
    }
    return best->device_id;
}

std::vector<DeviceCandidate> build_candidates(const circuit::QuantumCircuit& generic, int shots, const Qdmi& qdmi,
                                              const fomac::HealthLimits& limits) {
    std::vector<DeviceCandidate> out;
    const Timestamp now = qdmi.clock().now();
    for (const auto& id : qdmi.device_list()) {
        const auto props = qdmi.properties(id);
        if (props.num_qubits < generic.num_qubits()) continue;
        const auto snap = qdmi.telemetry(id);
        DeviceCandidate c;
        c.device_id = id;
        c.healthy = fomac::environment_health(snap, limits, now).healthy;
        c.esp = fomac::estimate_generic_success_probability(generic, snap);
        c.est_exec_s = estimate_execution_time(generic_critical_path(generic, props), shots, props);
        c.est_wait_s = estimate_wait(qdmi.device_load(id), now);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace ministack::scheduler
