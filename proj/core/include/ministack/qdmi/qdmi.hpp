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

// Device management interface: session management, job submission and
// queue management, and the property query interface.

#pragma once

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "ministack/clock.hpp"
#include "ministack/qdmi/device.hpp"
#include "ministack/qdmi/ids.hpp"
#include "ministack/qdmi/types.hpp"
#include "ministack/scheduler/queue.hpp"
#include "ministack/scheduler/timing.hpp"

namespace ministack {

/// Reads an allow-list file: one token per line, blank lines and lines
/// starting with '#' ignored. Throws Error(Io).
std::set<std::string> load_allow_list(const std::filesystem::path& path);

struct QdmiOptions {
    std::set<std::string> allow_list;
    int max_shots = 100000;
    std::shared_ptr<const Clock> clock = std::make_shared<SystemClock>();
    /// How long an idle dispatch loop sleeps before re-checking its queue
    /// (reservation windows open and close without a notification).
    std::chrono::milliseconds idle_poll{10};
};

struct TransitionEvent {
    JobId job_id;
    std::optional<JobState> from;  // nullopt for the creating event
    JobState to;
    Timestamp at;
};

class Qdmi {
public:
    explicit Qdmi(QdmiOptions options = {});
    ~Qdmi();

    Qdmi(const Qdmi&) = delete;
    Qdmi& operator=(const Qdmi&) = delete;

    // -- sessions ---------------------------------------------------------

    /// Throws Error(Auth) for an empty or unknown token.
    Session session_open(std::string_view token);
    /// Cancels the session's non-terminal jobs. Throws AlreadyClosed, or
    /// Auth for an unknown id.
    void session_close(const SessionId& session_id);
    /// Throws Error(Auth) unless the session exists and is open.
    [[nodiscard]] Session session(const SessionId& session_id) const;

    // -- devices ----------------------------------------------------------

    /// Validates the plugin's static properties and starts its dispatch
    /// loop. Throws InvalidProperties or DuplicateDevice.
    DeviceId register_device(std::shared_ptr<DevicePlugin> plugin);
    [[nodiscard]] std::vector<DeviceId> device_list() const;
    [[nodiscard]] DeviceProperties properties(const DeviceId& device) const;
    /// The plugin's snapshot at the current clock time. Never waits for an
    /// execution.
    [[nodiscard]] TelemetrySnapshot telemetry(const DeviceId& device) const;

    static const std::vector<std::string>& static_keys();
    static const std::vector<std::string>& dynamic_keys();
    /// Throws UnknownDevice or UnknownKey.
    [[nodiscard]] nlohmann::json query_static(const DeviceId& device, std::string_view key) const;
    [[nodiscard]] nlohmann::json query_dynamic(const DeviceId& device, std::string_view key) const;

    // -- device-level job interface --------------------------------------

    /// Validates and queues a low-level program. The job is created directly
    /// in QUEUED. Throws Auth, UnknownDevice, Validation or Limit.
    JobId job_submit(const SessionId& session_id, const DeviceId& device, std::string program, int shots,
                     int priority, std::optional<std::uint64_t> seed = std::nullopt);
    [[nodiscard]] JobState job_status(const JobId& job_id) const;
    /// Throws UnknownJob, or NotDone unless the job is DONE.
    [[nodiscard]] Counts job_result(const JobId& job_id) const;
    /// Throws UnknownJob or AlreadyTerminal. Signals the plugin when RUNNING.
    void job_cancel(const JobId& job_id);
    [[nodiscard]] JobRecord job(const JobId& job_id) const;
    [[nodiscard]] std::vector<JobRecord> jobs_of_owner(const std::string& owner) const;

    // -- orchestration entry points ---------------------------------------
    // The service drives RECEIVED -> SCHEDULED -> COMPILED itself and then
    // hands the job to the device queue. Each call throws AlreadyTerminal if
    // the job was cancelled in the meantime.

    JobId job_create(const SessionId& session_id, int shots, int priority,
                     std::optional<std::uint64_t> seed = std::nullopt);
    void job_schedule(const JobId& job_id, const DeviceId& device);
    void job_compiled(const JobId& job_id, std::string program);
    /// COMPILED -> QUEUED after validating the program against the device.
    void job_enqueue(const JobId& job_id);
    /// Moves a non-terminal job to FAILED. Returns false if already terminal.
    bool job_fail(const JobId& job_id, const std::string& message);
    /// Inserts a terminal record (job log replay). Throws Validation for a
    /// non-terminal record.
    void job_restore(JobRecord record);

    // -- scheduling hooks ---------------------------------------------------

    [[nodiscard]] scheduler::DeviceLoad device_load(const DeviceId& device) const;
    [[nodiscard]] std::size_t queue_length(const DeviceId& device) const;
    scheduler::Reservation reserve(const DeviceId& device, Timestamp start, Timestamp end,
                                   const SessionId& owner_session, std::set<JobId> owner_jobs = {});
    void release(const DeviceId& device, std::uint64_t reservation_id);

    // -- observation --------------------------------------------------------

    [[nodiscard]] std::vector<TransitionEvent> transition_log() const;
    /// Called under the registry lock after every transition; must not call
    /// back into this object.
    void set_transition_listener(std::function<void(const TransitionEvent&)> listener);
    /// Waits until every known job is terminal. Returns false on timeout.
    bool wait_all_terminal(std::chrono::milliseconds timeout) const;
    /// Waits until `job_id` is terminal. Returns false on timeout.
    bool wait_terminal(const JobId& job_id, std::chrono::milliseconds timeout) const;

    [[nodiscard]] const Clock& clock() const { return *options_.clock; }
    [[nodiscard]] int max_shots() const { return options_.max_shots; }

private:
    struct DeviceSlot;

    DeviceSlot& slot(const DeviceId& device) const;
    JobRecord& job_locked(const JobId& job_id);
    const JobRecord& job_locked(const JobId& job_id) const;
    const Session& open_session_locked(const SessionId& session_id) const;
    void check_limits(int shots, int priority) const;
    void transition_locked(JobRecord& job, JobState to);
    void record_locked(const JobRecord& job, std::optional<JobState> from, JobState to, Timestamp at);
    void cancel_locked(JobRecord& job);
    void enqueue_locked(JobRecord& job, DeviceSlot& slot);
    std::uint64_t pick_seed(std::optional<std::uint64_t> seed);
    void dispatch_loop(DeviceSlot& slot);

    QdmiOptions options_;
    UlidGenerator ulids_;

    mutable std::mutex mu_;
    mutable std::condition_variable changed_;
    bool stopping_ = false;
    std::map<SessionId, Session> sessions_;
    std::map<DeviceId, std::unique_ptr<DeviceSlot>> devices_;
    std::map<JobId, JobRecord> jobs_;
    std::vector<TransitionEvent> log_;
    std::function<void(const TransitionEvent&)> listener_;
    std::uint64_t seed_counter_ = 0;
};

}  // namespace ministack
