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


// Orchestration: takes GENERIC submissions through scheduling, compilation
// and the device queue, then post-processes results.

#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "ministack/circuit/circuit.hpp"
#include "ministack/fomac/fomac.hpp"
#include "ministack/qdmi/qdmi.hpp"
#include "ministack/scheduler/select.hpp"
#include "ministack/service/config.hpp"
#include "ministack/service/joblog.hpp"
#include "ministack/service/origin.hpp"
#include "ministack/service/postprocess.hpp"

namespace ministack::service {

struct SubmissionRequest {
    std::string circuit;
    int shots = 0;
    int priority = 0;
    std::optional<scheduler::SchedulingPolicy> policy;
    std::optional<DeviceId> device_override;
    bool mitigate_readout = false;
    std::optional<std::uint64_t> seed;
    /// Set by the transport from the connection, never from the body.
    Origin origin = Origin::Remote;
};

/// Body of POST /v1/jobs: {circuit, shots, priority?, policy?, device?,
/// mitigate?, seed?}. Unknown keys are rejected. Throws Validation or
/// InvalidPolicy.
SubmissionRequest parse_submission(const nlohmann::json& body);

struct ResultEnvelope {
    JobId job_id;
    Counts counts;
    Histogram histogram;
    std::optional<Histogram> mitigated_histogram;
    /// device_id, calibrated_at, snapshot_taken_at, started_at,
    /// compile_stats, pipeline, policy, origin, seed and, when mitigation
    /// was requested but impossible, mitigation_error.
    nlohmann::json metadata;
};

void to_json(nlohmann::json& j, const ResultEnvelope& e);
void from_json(const nlohmann::json& j, ResultEnvelope& e);

struct DeviceSummary {
    DeviceProperties properties;
    fomac::FomacReport fomac;
    std::size_t queue_length = 0;
    double est_wait_s = 0;
};

void to_json(nlohmann::json& j, const DeviceSummary& d);

class Service {
public:
    /// Replays the job log when one is configured: finished jobs come back
    /// as they were, unfinished ones as FAILED.
    Service(std::shared_ptr<Qdmi> qdmi, ServiceConfig config);
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    Session open_session(std::string_view token);
    void close_session(const SessionId& session_id);
    /// Throws Auth unless the session is open.
    Session authenticate(const SessionId& session_id) const;

    /// Validates synchronously (Auth, Syntax, Limit, InvalidPolicy,
    /// Validation for an unknown device override, TooWide when no device
    /// has enough qubits, NoHealthyDevice) and returns once the job is
    /// RECEIVED. The rest runs on the worker pool.
    JobId submit(const SessionId& session_id, SubmissionRequest request);

    /// JobRecord view plus origin and mitigation flag. Jobs of other
    /// owners are reported as UnknownJob.
    nlohmann::json job_view(const SessionId& session_id, const JobId& job_id) const;
    std::vector<nlohmann::json> list_jobs(const SessionId& session_id) const;
    /// Throws UnknownJob or NotDone. Repeated calls return the same envelope.
    ResultEnvelope result(const SessionId& session_id, const JobId& job_id);
    /// Throws UnknownJob or AlreadyTerminal.
    void cancel(const SessionId& session_id, const JobId& job_id);

    std::vector<DeviceSummary> list_devices() const;
    /// Throws UnknownDevice.
    DeviceSummary device(const DeviceId& device) const;
    TelemetrySnapshot telemetry(const DeviceId& device) const;

    /// Waits until no orchestration task is pending and every job event has
    /// been processed. Returns false on timeout.
    bool wait_idle(std::chrono::milliseconds timeout) const;

    [[nodiscard]] Qdmi& qdmi() { return *qdmi_; }
    [[nodiscard]] const ServiceConfig& config() const { return config_; }

private:
    struct JobContext {
        SubmissionRequest request;
        circuit::QuantumCircuit circuit;
        scheduler::SchedulingPolicy policy;
        int requested_priority = 0;
        std::optional<nlohmann::json> compile_stats;
        std::optional<Timestamp> calibrated_at;
        std::optional<Timestamp> snapshot_taken_at;
        /// Confusion pair per classical bit, from the measured physical qubit.
        std::vector<std::pair<double, double>> clbit_confusion;
        DeviceId device_id;
    };

    void orchestrate(const JobId& job_id);
    void on_transition(const TransitionEvent& event);
    void event_loop();
    void worker_loop();
    void post(std::function<void()> task);
    ResultEnvelope build_envelope(const JobRecord& record);
    void replay_log();
    JobRecord owned_job(const SessionId& session_id, const JobId& job_id) const;
    DeviceSummary summarize(const DeviceId& device) const;

    std::shared_ptr<Qdmi> qdmi_;
    ServiceConfig config_;
    std::vector<Cidr> local_cidrs_;
    std::unique_ptr<JobLog> log_;

    mutable std::mutex mu_;
    std::map<JobId, std::shared_ptr<JobContext>> contexts_;
    std::map<JobId, ResultEnvelope> envelopes_;

    // Worker pool and the event thread share one wake-up condition.
    mutable std::mutex work_mu_;
    mutable std::condition_variable work_cv_;
    mutable std::condition_variable idle_cv_;
    std::deque<std::function<void()>> tasks_;
    std::deque<TransitionEvent> events_;
    int busy_ = 0;
    bool event_busy_ = false;
    bool stopping_ = false;
    std::vector<std::thread> workers_;
    std::thread event_thread_;
};

}  // namespace ministack::service
