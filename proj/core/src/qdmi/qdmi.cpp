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

#include "ministack/qdmi/qdmi.hpp"

#include <algorithm>
#include <fstream>

#include "ministack/circuit/lowlevel.hpp"
#include "ministack/error.hpp"

namespace ministack {

struct Qdmi::DeviceSlot {
    std::shared_ptr<DevicePlugin> plugin;
    DeviceProperties props;
    scheduler::DeviceQueue queue;
    std::condition_variable wake;
    std::optional<JobId> running;
    Timestamp running_since = 0;
    double running_est = 0;
    CancelToken cancel;
    std::thread worker;

    explicit DeviceSlot(const DeviceId& id) : queue(id) {}
};

std::set<std::string> load_allow_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot read allow-list '" + path.string() + "'");
    std::set<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto e = line.find_last_not_of(" \t\r");
        tokens.insert(line.substr(b, e - b + 1));
    }
    return tokens;
}

Qdmi::Qdmi(QdmiOptions options) : options_(std::move(options)) {
    if (!options_.clock) options_.clock = std::make_shared<SystemClock>();
}

Qdmi::~Qdmi() {
    {
        std::lock_guard lock(mu_);
        stopping_ = true;
        for (auto& [_, slot] : devices_) {
            slot->cancel.request();
            slot->wake.notify_all();
        }
    }
    for (auto& [_, slot] : devices_) {
        if (slot->worker.joinable()) slot->worker.join();
    }
}

// -- sessions ---------------------------------------------------------------

Session Qdmi::session_open(std::string_view token) {
    if (token.empty()) throw Error(ErrorCode::Auth, "empty credentials");
    std::lock_guard lock(mu_);
    if (!options_.allow_list.contains(std::string(token))) throw Error(ErrorCode::Auth, "unknown token");
    Session s{random_token_hex(), std::string(token), options_.clock->now(), true};
    while (sessions_.contains(s.session_id)) s.session_id = random_token_hex();
    sessions_.emplace(s.session_id, s);
    return s;
}

void Qdmi::session_close(const SessionId& session_id) {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) throw Error(ErrorCode::Auth, "unknown session");
    if (!it->second.open) throw Error(ErrorCode::AlreadyClosed, "session already closed");
    it->second.open = false;
    for (auto& [_, job] : jobs_) {
        if (job.session_id == session_id && !is_terminal(job.state)) cancel_locked(job);
    }
}

Session Qdmi::session(const SessionId& session_id) const {
    std::lock_guard lock(mu_);
    return open_session_locked(session_id);
}

const Session& Qdmi::open_session_locked(const SessionId& session_id) const {
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) throw Error(ErrorCode::Auth, "unknown session");
    if (!it->second.open) throw Error(ErrorCode::Auth, "session is closed");
    return it->second;
}

// -- devices ----------------------------------------------------------------

DeviceId Qdmi::register_device(std::shared_ptr<DevicePlugin> plugin) {
    if (!plugin) throw Error(ErrorCode::InvalidProperties, "null plugin");
    DeviceProperties props = plugin->static_properties();
    props.validate();
    std::lock_guard lock(mu_);
    for (const auto& [id, slot] : devices_) {
        if (id == props.device_id || slot->props.display_name == props.display_name) {
            throw Error(ErrorCode::DuplicateDevice, "device '" + props.display_name + "' is already registered");
        }
    }
    auto slot = std::make_unique<DeviceSlot>(props.device_id);
    slot->plugin = std::move(plugin);
    slot->props = props;
    DeviceSlot& ref = *slot;
    devices_.emplace(props.device_id, std::move(slot));
    ref.worker = std::thread([this, &ref] { dispatch_loop(ref); });
    return props.device_id;
}

std::vector<DeviceId> Qdmi::device_list() const {
    std::lock_guard lock(mu_);
    std::vector<DeviceId> ids;
    for (const auto& [id, _] : devices_) ids.push_back(id);
    return ids;
}

Qdmi::DeviceSlot& Qdmi::slot(const DeviceId& device) const {
    auto it = devices_.find(device);
    if (it == devices_.end()) throw Error(ErrorCode::UnknownDevice, "unknown device '" + device + "'");
    return *it->second;
}

DeviceProperties Qdmi::properties(const DeviceId& device) const {
    std::lock_guard lock(mu_);
    return slot(device).props;
}

TelemetrySnapshot Qdmi::telemetry(const DeviceId& device) const {
    std::shared_ptr<DevicePlugin> plugin;
    {
        std::lock_guard lock(mu_);
        plugin = slot(device).plugin;
    }
    return plugin->telemetry(options_.clock->now());
}

const std::vector<std::string>& Qdmi::static_keys() {
    static const std::vector<std::string> keys{"num_qubits",     "native_gates",  "coupling_map",
                                               "gate_durations", "shot_overhead", "setup_overhead"};
    return keys;
}

const std::vector<std::string>& Qdmi::dynamic_keys() {
    static const std::vector<std::string> keys{"gate_fidelity",    "t1",        "t2",           "readout_fidelity",
                                               "confusion",        "temperature_mK", "calibrated_at"};
    return keys;
}

nlohmann::json Qdmi::query_static(const DeviceId& device, std::string_view key) const {
    const DeviceProperties props = properties(device);
    const auto& keys = static_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        throw Error(ErrorCode::UnknownKey, "unknown static key '" + std::string(key) + "'");
    }
    return nlohmann::json(props).at(std::string(key));
}

nlohmann::json Qdmi::query_dynamic(const DeviceId& device, std::string_view key) const {
    const auto& keys = dynamic_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        // Report an unknown device before an unknown key.
        (void)properties(device);
        throw Error(ErrorCode::UnknownKey, "unknown dynamic key '" + std::string(key) + "'");
    }
    return nlohmann::json(telemetry(device)).at(std::string(key));
}

// -- jobs ---------------------------------------------------------------------

JobRecord& Qdmi::job_locked(const JobId& job_id) {
    auto it = jobs_.find(job_id);
    if (it == jobs_.end()) throw Error(ErrorCode::UnknownJob, "unknown job '" + job_id + "'");
    return it->second;
}

const JobRecord& Qdmi::job_locked(const JobId& job_id) const {
    auto it = jobs_.find(job_id);
    if (it == jobs_.end()) throw Error(ErrorCode::UnknownJob, "unknown job '" + job_id + "'");
    return it->second;
}

void Qdmi::check_limits(int shots, int priority) const {
    if (shots < 1 || shots > options_.max_shots) {
        throw Error(ErrorCode::Limit,
                    "shots must be in [1, " + std::to_string(options_.max_shots) + "], got " + std::to_string(shots));
    }
    if (priority < scheduler::kMinPriority || priority > scheduler::kMaxPriority) {
        throw Error(ErrorCode::Validation, "priority must be in [0, 9], got " + std::to_string(priority));
    }
}

std::uint64_t Qdmi::pick_seed(std::optional<std::uint64_t> seed) {
    if (seed) return *seed;
    const auto t = static_cast<std::uint64_t>(options_.clock->now() * 1e9);
    return t ^ (0x9e3779b97f4a7c15ULL * ++seed_counter_);
}

void Qdmi::record_locked(const JobRecord& job, std::optional<JobState> from, JobState to, Timestamp at) {
    TransitionEvent ev{job.job_id, from, to, at};
    log_.push_back(ev);
    if (listener_) listener_(ev);
    changed_.notify_all();
}

void Qdmi::transition_locked(JobRecord& job, JobState to) {
    if (is_terminal(job.state)) {
        throw Error(ErrorCode::AlreadyTerminal,
                    "job '" + job.job_id + "' is already " + std::string(job_state_name(job.state)));
    }
    if (!transition_allowed(job.state, to)) {
        throw Error(ErrorCode::IllegalTransition, "job '" + job.job_id + "': " +
                                                      std::string(job_state_name(job.state)) + " -> " +
                                                      std::string(job_state_name(to)));
    }
    const JobState from = job.state;
    const Timestamp at = options_.clock->now();
    job.state = to;
    job.transitions.emplace_back(to, at);
    record_locked(job, from, to, at);
}

void Qdmi::enqueue_locked(JobRecord& job, DeviceSlot& slot) {
    circuit::QuantumCircuit program;
    try {
        program = circuit::parse_lowlevel(job.program);
    } catch (const Error& e) {
        throw Error(ErrorCode::Validation, std::string("program does not parse: ") + e.what());
    }
    validate_program(program, slot.props);
    const double critical = scheduler::critical_path_duration(program, slot.props);
    job.est_exec_s = scheduler::estimate_execution_time(critical, job.shots, slot.props);
    job.seq = slot.queue.enqueue(job.job_id, job.priority, job.session_id, job.est_exec_s);
    slot.wake.notify_all();
}

JobId Qdmi::job_submit(const SessionId& session_id, const DeviceId& device, std::string program, int shots,
                       int priority, std::optional<std::uint64_t> seed) {
    std::lock_guard lock(mu_);
    const Session& session = open_session_locked(session_id);
    DeviceSlot& target = slot(device);
    check_limits(shots, priority);

    JobRecord job;
    job.job_id = ulids_.next(options_.clock->now());
    job.session_id = session_id;
    job.owner = session.owner;
    job.device_id = device;
    job.program = std::move(program);
    job.shots = shots;
    job.priority = priority;
    job.seed = pick_seed(seed);
    job.state = JobState::Queued;
    enqueue_locked(job, target);

    const Timestamp at = options_.clock->now();
    job.transitions.emplace_back(JobState::Queued, at);
    auto [it, _] = jobs_.emplace(job.job_id, std::move(job));
    record_locked(it->second, std::nullopt, JobState::Queued, at);
    return it->first;
}

JobState Qdmi::job_status(const JobId& job_id) const {
    std::lock_guard lock(mu_);
    return job_locked(job_id).state;
}

Counts Qdmi::job_result(const JobId& job_id) const {
    std::lock_guard lock(mu_);
    const JobRecord& job = job_locked(job_id);
    if (job.state != JobState::Done) {
        throw Error(ErrorCode::NotDone, "job '" + job_id + "' is " + std::string(job_state_name(job.state)));
    }
    return *job.result;
}

void Qdmi::cancel_locked(JobRecord& job) {
    if (job.state == JobState::Queued && !job.device_id.empty()) slot(job.device_id).queue.remove(job.job_id);
    if (job.state == JobState::Running) {
        DeviceSlot& s = slot(job.device_id);
        if (s.running == job.job_id) s.cancel.request();
    }
    transition_locked(job, JobState::Cancelled);
}

void Qdmi::job_cancel(const JobId& job_id) {
    std::lock_guard lock(mu_);
    cancel_locked(job_locked(job_id));
}

JobRecord Qdmi::job(const JobId& job_id) const {
    std::lock_guard lock(mu_);
    return job_locked(job_id);
}

std::vector<JobRecord> Qdmi::jobs_of_owner(const std::string& owner) const {
    std::lock_guard lock(mu_);
    std::vector<JobRecord> out;
    for (const auto& [_, job] : jobs_) {
        if (job.owner == owner) out.push_back(job);
    }
    return out;
}

JobId Qdmi::job_create(const SessionId& session_id, int shots, int priority, std::optional<std::uint64_t> seed) {
    std::lock_guard lock(mu_);
    const Session& session = open_session_locked(session_id);
    check_limits(shots, priority);
    JobRecord job;
    job.job_id = ulids_.next(options_.clock->now());
    job.session_id = session_id;
    job.owner = session.owner;
    job.shots = shots;
    job.priority = priority;
    job.seed = pick_seed(seed);
    job.state = JobState::Received;
    const Timestamp at = options_.clock->now();
    job.transitions.emplace_back(JobState::Received, at);
    auto [it, _] = jobs_.emplace(job.job_id, std::move(job));
    record_locked(it->second, std::nullopt, JobState::Received, at);
    return it->first;
}

void Qdmi::job_schedule(const JobId& job_id, const DeviceId& device) {
    std::lock_guard lock(mu_);
    JobRecord& job = job_locked(job_id);
    (void)slot(device);
    transition_locked(job, JobState::Scheduled);
    job.device_id = device;
}

void Qdmi::job_compiled(const JobId& job_id, std::string program) {
    std::lock_guard lock(mu_);
    JobRecord& job = job_locked(job_id);
    transition_locked(job, JobState::Compiled);
    job.program = std::move(program);
}

void Qdmi::job_enqueue(const JobId& job_id) {
    std::lock_guard lock(mu_);
    JobRecord& job = job_locked(job_id);
    if (is_terminal(job.state)) {
        throw Error(ErrorCode::AlreadyTerminal,
                    "job '" + job_id + "' is already " + std::string(job_state_name(job.state)));
    }
    if (job.state != JobState::Compiled) {
        throw Error(ErrorCode::IllegalTransition, "job '" + job_id + "' is not COMPILED");
    }
    DeviceSlot& target = slot(job.device_id);
    enqueue_locked(job, target);
    transition_locked(job, JobState::Queued);
}

bool Qdmi::job_fail(const JobId& job_id, const std::string& message) {
    std::lock_guard lock(mu_);
    JobRecord& job = job_locked(job_id);
    if (is_terminal(job.state)) return false;
    if (job.state == JobState::Queued && !job.device_id.empty()) slot(job.device_id).queue.remove(job.job_id);
    job.error = message;
    transition_locked(job, JobState::Failed);
    return true;
}

void Qdmi::job_restore(JobRecord record) {
    if (!is_terminal(record.state)) throw Error(ErrorCode::Validation, "only terminal jobs can be restored");
    std::lock_guard lock(mu_);
    jobs_.insert_or_assign(record.job_id, std::move(record));
}

// -- scheduling hooks ----------------------------------------------------------

scheduler::DeviceLoad Qdmi::device_load(const DeviceId& device) const {
    std::lock_guard lock(mu_);
    DeviceSlot& s = slot(device);
    scheduler::DeviceLoad load;
    for (const auto& e : s.queue.snapshot()) load.queued_estimates.push_back(e.est_exec_s);
    if (s.running) load.running = scheduler::RunningJob{s.running_since, s.running_est};
    return load;
}

std::size_t Qdmi::queue_length(const DeviceId& device) const {
    std::lock_guard lock(mu_);
    return slot(device).queue.size();
}

scheduler::Reservation Qdmi::reserve(const DeviceId& device, Timestamp start, Timestamp end,
                                     const SessionId& owner_session, std::set<JobId> owner_jobs) {
    std::lock_guard lock(mu_);
    open_session_locked(owner_session);
    return slot(device).queue.reserve(start, end, owner_session, std::move(owner_jobs));
}

void Qdmi::release(const DeviceId& device, std::uint64_t reservation_id) {
    std::lock_guard lock(mu_);
    DeviceSlot& s = slot(device);
    s.queue.release(reservation_id);
    s.wake.notify_all();
}

// -- observation ---------------------------------------------------------------

std::vector<TransitionEvent> Qdmi::transition_log() const {
    std::lock_guard lock(mu_);
    return log_;
}

void Qdmi::set_transition_listener(std::function<void(const TransitionEvent&)> listener) {
    std::lock_guard lock(mu_);
    listener_ = std::move(listener);
}

bool Qdmi::wait_all_terminal(std::chrono::milliseconds timeout) const {
    std::unique_lock lock(mu_);
    return changed_.wait_for(lock, timeout, [&] {
        return std::all_of(jobs_.begin(), jobs_.end(), [](const auto& kv) { return is_terminal(kv.second.state); });
    });
}

bool Qdmi::wait_terminal(const JobId& job_id, std::chrono::milliseconds timeout) const {
    std::unique_lock lock(mu_);
    (void)job_locked(job_id);
    return changed_.wait_for(lock, timeout, [&] { return is_terminal(job_locked(job_id).state); });
}

// -- dispatch -------------------------------------------------------------------

void Qdmi::dispatch_loop(DeviceSlot& slot) {
    std::unique_lock lock(mu_);
    while (!stopping_) {
        auto entry = slot.queue.try_next(options_.clock->now());
        if (!entry) {
            slot.wake.wait_for(lock, options_.idle_poll);
            continue;
        }
        auto it = jobs_.find(entry->job_id);
        if (it == jobs_.end() || it->second.state != JobState::Queued) continue;

        JobRecord& job = it->second;
        transition_locked(job, JobState::Running);
        slot.running = job.job_id;
        slot.running_since = options_.clock->now();
        slot.running_est = job.est_exec_s;
        slot.cancel.reset();
        const JobId id = job.job_id;
        const std::string program = job.program;
        const int shots = job.shots;
        const std::uint64_t seed = job.seed;

        lock.unlock();
        std::optional<Counts> counts;
        std::string error;
        try {
            counts = slot.plugin->execute(program, shots, seed, slot.cancel);
        } catch (const std::exception& e) {
            error = e.what();
        }
        lock.lock();

        slot.running.reset();
        JobRecord& done = jobs_.at(id);
        if (done.state != JobState::Running) continue;  // cancelled while running
        if (counts && counts->sum() == static_cast<std::uint64_t>(shots) &&
            counts->shots_total == static_cast<std::uint64_t>(shots)) {
            done.result = std::move(counts);
            transition_locked(done, JobState::Done);
        } else {
            done.error = counts ? "plugin returned counts that do not sum to shots" : error;
            transition_locked(done, JobState::Failed);
        }
    }
}

}  // namespace ministack
