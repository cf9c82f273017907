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


#include "ministack/service/service.hpp"

#include <algorithm>
#include <set>

#include "ministack/circuit/qasm.hpp"
#include "ministack/compiler/pipeline.hpp"
#include "ministack/error.hpp"
#include "ministack/scheduler/timing.hpp"

namespace ministack::service {

namespace {

const std::set<std::string> kSubmissionKeys = {"circuit", "shots", "priority", "policy", "device", "mitigate", "seed"};

nlohmann::json histogram_json(const Histogram& h) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : h) j[k] = v;
    return j;
}

JobRecord record_from_log(const nlohmann::json& j) {
    JobRecord r;
    r.job_id = j.at("job_id").get<std::string>();
    r.session_id = j.value("session_id", "");
    r.owner = j.at("owner").get<std::string>();
    if (j.contains("device_id") && j.at("device_id").is_string()) r.device_id = j.at("device_id").get<std::string>();
    r.program = j.value("program", "");
    r.shots = j.at("shots").get<int>();
    r.priority = j.at("priority").get<int>();
    auto state = parse_job_state(j.at("state").get<std::string>());
    if (!state) throw Error(ErrorCode::Validation, "bad state in job log");
    r.state = *state;
    r.seq = j.value("seq", std::uint64_t{0});
    r.seed = j.value("seed", std::uint64_t{0});
    r.est_exec_s = j.value("est_exec_s", 0.0);
    for (const auto& t : j.value("transitions", nlohmann::json::array())) {
        auto s = parse_job_state(t.at("state").get<std::string>());
        if (!s) throw Error(ErrorCode::Validation, "bad transition in job log");
        r.transitions.emplace_back(*s, t.at("at").get<double>());
    }
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
    return r;
}

}  // namespace

SubmissionRequest parse_submission(const nlohmann::json& body) {
    if (!body.is_object()) throw Error(ErrorCode::Validation, "request body must be a JSON object");
    for (const auto& [key, _] : body.items()) {
        if (!kSubmissionKeys.contains(key)) throw Error(ErrorCode::Validation, "unknown field '" + key + "'");
    }
    SubmissionRequest r;
    try {
        r.circuit = body.at("circuit").get<std::string>();
        r.shots = body.at("shots").get<int>();
        r.priority = body.value("priority", 0);
        if (body.contains("policy") && !body.at("policy").is_null()) {
            r.policy = body.at("policy").get<scheduler::SchedulingPolicy>();
        }
        if (body.contains("device") && !body.at("device").is_null()) r.device_override = body.at("device").get<std::string>();
        r.mitigate_readout = body.value("mitigate", false);
        if (body.contains("seed") && !body.at("seed").is_null()) r.seed = body.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Validation, std::string("malformed submission: ") + e.what());
    }
    return r;
}

void to_json(nlohmann::json& j, const ResultEnvelope& e) {
    j = nlohmann::json{{"job_id", e.job_id},
                       {"counts", e.counts},
                       {"histogram", histogram_json(e.histogram)},
                       {"mitigated_histogram",
                        e.mitigated_histogram ? histogram_json(*e.mitigated_histogram) : nlohmann::json(nullptr)},
                       {"metadata", e.metadata}};
}

void from_json(const nlohmann::json& j, ResultEnvelope& e) {
    e.job_id = j.at("job_id").get<std::string>();
    e.counts = j.at("counts").get<Counts>();
    e.histogram = j.at("histogram").get<Histogram>();
    if (j.contains("mitigated_histogram") && !j.at("mitigated_histogram").is_null()) {
        e.mitigated_histogram = j.at("mitigated_histogram").get<Histogram>();
    } else {
        e.mitigated_histogram.reset();
    }
    e.metadata = j.at("metadata");
}

void to_json(nlohmann::json& j, const DeviceSummary& d) {
    j = nlohmann::json{{"device_id", d.properties.device_id},
                       {"properties", d.properties},
                       {"fomac", d.fomac},
                       {"queue_length", d.queue_length},
                       {"est_wait_s", d.est_wait_s}};
}

// -- lifecycle ----------------------------------------------------------------

Service::Service(std::shared_ptr<Qdmi> qdmi, ServiceConfig config)
    : qdmi_(std::move(qdmi)), config_(std::move(config)) {
    if (!qdmi_) throw Error(ErrorCode::Config, "service needs a device registry");
    config_.validate();
    for (const auto& c : config_.local_cidrs) local_cidrs_.push_back(*parse_cidr(c));
    if (config_.job_log) {
        replay_log();
        log_ = std::make_unique<JobLog>(*config_.job_log);
    }
    qdmi_->set_transition_listener([this](const TransitionEvent& e) { on_transition(e); });
    for (int i = 0; i < config_.worker_threads; ++i) workers_.emplace_back([this] { worker_loop(); });
    event_thread_ = std::thread([this] { event_loop(); });
}

Service::~Service() {
    qdmi_->set_transition_listener({});
    {
        std::lock_guard lock(work_mu_);
        stopping_ = true;
    }
    work_cv_.notify_all();
    for (auto& t : workers_) t.join();
    event_thread_.join();
}

void Service::replay_log() {
    const auto entries = JobLog::read(*config_.job_log);
    std::vector<JobId> order;
    std::map<JobId, nlohmann::json> accepted, terminal;
    for (const auto& e : entries) {
        const auto id = e.value("job_id", "");
        if (id.empty()) continue;
        const auto kind = e.value("event", "");
        if (!accepted.contains(id) && !terminal.contains(id)) order.push_back(id);
        if (kind == "accepted") accepted[id] = e;
        if (kind == "terminal") terminal[id] = e;
    }
    std::vector<nlohmann::json> interrupted;
    for (const auto& id : order) {
        try {
            if (auto t = terminal.find(id); t != terminal.end()) {
                JobRecord r = record_from_log(t->second.at("job"));
                if (r.state == JobState::Done && t->second.contains("envelope")) {
                    auto env = t->second.at("envelope").get<ResultEnvelope>();
                    r.result = env.counts;
                    envelopes_.emplace(id, std::move(env));
                } else if (r.state == JobState::Done) {
                    // Counts were not logged; nothing to serve.
                    r.state = JobState::Failed;
                    r.error = "result lost across restart";
                }
                qdmi_->job_restore(std::move(r));
                continue;
            }
            const auto& a = accepted.at(id);
            JobRecord r;
            r.job_id = id;
            r.owner = a.at("owner").get<std::string>();
            r.session_id = a.value("session_id", "");
            r.shots = a.at("shots").get<int>();
            r.priority = a.at("priority").get<int>();
            r.seed = a.value("seed", std::uint64_t{0});
            r.state = JobState::Failed;
            r.transitions = {{JobState::Received, a.value("received_at", 0.0)},
                             {JobState::Failed, qdmi_->clock().now()}};
            r.error = "service restarted before the job finished";
            nlohmann::json view = r;
            view["owner"] = r.owner;
            view["session_id"] = r.session_id;
            interrupted.push_back({{"event", "terminal"}, {"job_id", id}, {"job", view}});
            qdmi_->job_restore(std::move(r));
        } catch (const std::exception&) {
            // A damaged entry loses that job only.
        }
    }
    if (!interrupted.empty()) {
        JobLog out(*config_.job_log);
        for (const auto& e : interrupted) out.append(e);
    }
}

// -- worker pool and event thread ----------------------------------------------

void Service::post(std::function<void()> task) {
    {
        std::lock_guard lock(work_mu_);
        tasks_.push_back(std::move(task));
    }
    work_cv_.notify_all();
}

void Service::worker_loop() {
    std::unique_lock lock(work_mu_);
    while (true) {
        work_cv_.wait(lock, [&] { return stopping_ || !tasks_.empty(); });
        if (tasks_.empty()) return;
        auto task = std::move(tasks_.front());
        tasks_.pop_front();
        ++busy_;
        lock.unlock();
        task();
        lock.lock();
        --busy_;
        idle_cv_.notify_all();
    }
}

void Service::on_transition(const TransitionEvent& event) {
    // Runs under the registry lock: queue and return.
    if (!is_terminal(event.to)) return;
    {
        std::lock_guard lock(work_mu_);
        events_.push_back(event);
    }
    work_cv_.notify_all();
}

void Service::event_loop() {
    std::unique_lock lock(work_mu_);
    while (true) {
        work_cv_.wait(lock, [&] { return stopping_ || !events_.empty(); });
        if (events_.empty()) return;
        const TransitionEvent event = events_.front();
        events_.pop_front();
        event_busy_ = true;
        lock.unlock();
        try {
            const JobRecord record = qdmi_->job(event.job_id);
            nlohmann::json view = record;
            view["owner"] = record.owner;
            view["session_id"] = record.session_id;
            nlohmann::json entry{{"event", "terminal"}, {"job_id", record.job_id}, {"job", view}};
            if (record.state == JobState::Done && record.result) {
                ResultEnvelope env = build_envelope(record);
                std::lock_guard g(mu_);
                auto [it, _] = envelopes_.try_emplace(record.job_id, std::move(env));
                entry["envelope"] = it->second;
            }
            if (log_) log_->append(entry);
        } catch (const std::exception&) {
            // Logging is best effort; the job itself is already terminal.
        }
        lock.lock();
        event_busy_ = false;
        idle_cv_.notify_all();
    }
}

bool Service::wait_idle(std::chrono::milliseconds timeout) const {
    std::unique_lock lock(work_mu_);
    return idle_cv_.wait_for(lock, timeout,
                             [&] { return tasks_.empty() && events_.empty() && busy_ == 0 && !event_busy_; });
}

// -- sessions ---------------------------------------------------------------------

Session Service::open_session(std::string_view token) { return qdmi_->session_open(token); }

void Service::close_session(const SessionId& session_id) { qdmi_->session_close(session_id); }

Session Service::authenticate(const SessionId& session_id) const { return qdmi_->session(session_id); }

// -- submission -----------------------------------------------------------------

JobId Service::submit(const SessionId& session_id, SubmissionRequest request) {
    const Session session = authenticate(session_id);
    if (request.shots < 1 || request.shots > qdmi_->max_shots()) {
        throw Error(ErrorCode::Limit, "shots must be in [1, " + std::to_string(qdmi_->max_shots()) + "], got " +
                                          std::to_string(request.shots));
    }
    if (request.priority < 0 || request.priority > 9) {
        throw Error(ErrorCode::Limit, "priority must be in [0, 9], got " + std::to_string(request.priority));
    }
    auto ctx = std::make_shared<JobContext>();
    ctx->circuit = circuit::parse_circuit(request.circuit);
    ctx->policy = request.policy.value_or(config_.default_policy);
    ctx->policy.validate();

    if (request.device_override) {
        const auto ids = qdmi_->device_list();
        if (std::find(ids.begin(), ids.end(), *request.device_override) == ids.end()) {
            throw Error(ErrorCode::Validation, "device '" + *request.device_override + "' is not registered");
        }
    } else {
        // Reject up front what the scheduler could not place right now.
        const auto candidates =
            scheduler::build_candidates(ctx->circuit, request.shots, *qdmi_, config_.fomac);
        if (candidates.empty()) {
            throw Error(ErrorCode::TooWide, "no registered device has " +
                                                std::to_string(ctx->circuit.num_qubits()) + " qubits");
        }
        (void)scheduler::select_device(candidates, ctx->policy);
    }

    ctx->requested_priority = request.priority;
    const int priority = effective_priority(request.priority, request.origin);
    ctx->request = std::move(request);
    const JobId id = qdmi_->job_create(session_id, ctx->request.shots, priority, ctx->request.seed);
    {
        std::lock_guard lock(mu_);
        contexts_.emplace(id, ctx);
    }
    if (log_) {
        const JobRecord r = qdmi_->job(id);
        log_->append({{"event", "accepted"},
                      {"job_id", id},
                      {"owner", session.owner},
                      {"session_id", session_id},
                      {"shots", r.shots},
                      {"priority", r.priority},
                      {"seed", r.seed},
                      {"origin", origin_name(ctx->request.origin)},
                      {"received_at", r.transitions.front().second}});
    }
    post([this, id] { orchestrate(id); });
    return id;
}

void Service::orchestrate(const JobId& job_id) {
    std::shared_ptr<JobContext> ctx;
    {
        std::lock_guard lock(mu_);
        ctx = contexts_.at(job_id);
    }
    try {
        DeviceId device;
        if (ctx->request.device_override) {
            device = *ctx->request.device_override;
        } else {
            const auto candidates =
                scheduler::build_candidates(ctx->circuit, ctx->request.shots, *qdmi_, config_.fomac);
            device = scheduler::select_device(candidates, ctx->policy);
        }
        qdmi_->job_schedule(job_id, device);

        const DeviceProperties props = qdmi_->properties(device);
        const TelemetrySnapshot snapshot = qdmi_->telemetry(device);
        const auto compiled = compiler::compile(ctx->circuit, props, snapshot);

        std::vector<std::pair<double, double>> confusion(ctx->circuit.num_clbits(), {1.0, 1.0});
        for (const auto& op : compiled.native.ops()) {
            if (!op.is_measure()) continue;
            const auto q = static_cast<std::size_t>(op.qubits[0]);
            if (q < snapshot.confusion.size()) confusion[op.clbits[0]] = snapshot.confusion[q];
        }
        {
            std::lock_guard lock(mu_);
            ctx->device_id = device;
            ctx->compile_stats = compiled.stats;
            ctx->calibrated_at = snapshot.calibrated_at;
            ctx->snapshot_taken_at = snapshot.taken_at;
            ctx->clbit_confusion = std::move(confusion);
        }
        qdmi_->job_compiled(job_id, compiled.program);
        qdmi_->job_enqueue(job_id);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::AlreadyTerminal) return;  // cancelled meanwhile
        qdmi_->job_fail(job_id, std::string(error_code_name(e.code())) + ": " + e.what());
    } catch (const std::exception& e) {
        qdmi_->job_fail(job_id, e.what());
    }
}

// -- reads ------------------------------------------------------------------------

JobRecord Service::owned_job(const SessionId& session_id, const JobId& job_id) const {
    const Session session = authenticate(session_id);
    JobRecord r = qdmi_->job(job_id);
    if (r.owner != session.owner) throw Error(ErrorCode::UnknownJob, "unknown job '" + job_id + "'");
    return r;
}

nlohmann::json Service::job_view(const SessionId& session_id, const JobId& job_id) const {
    const JobRecord r = owned_job(session_id, job_id);
    nlohmann::json j = r;
    std::lock_guard lock(mu_);
    if (auto it = contexts_.find(job_id); it != contexts_.end()) {
        j["origin"] = origin_name(it->second->request.origin);
        j["requested_priority"] = it->second->requested_priority;
        j["mitigate"] = it->second->request.mitigate_readout;
    }
    return j;
}

std::vector<nlohmann::json> Service::list_jobs(const SessionId& session_id) const {
    const Session session = authenticate(session_id);
    std::vector<nlohmann::json> out;
    for (const auto& r : qdmi_->jobs_of_owner(session.owner)) out.push_back(job_view(session_id, r.job_id));
    return out;
}

ResultEnvelope Service::build_envelope(const JobRecord& record) {
    ResultEnvelope env;
    env.job_id = record.job_id;
    env.counts = *record.result;
    env.histogram = histogram(env.counts);

    std::shared_ptr<JobContext> ctx;
    {
        std::lock_guard lock(mu_);
        if (auto it = contexts_.find(record.job_id); it != contexts_.end()) ctx = it->second;
    }
    nlohmann::json& m = env.metadata;
    m = nlohmann::json::object();
    m["device_id"] = record.device_id;
    m["seed"] = record.seed;
    const auto started = record.entered(JobState::Running);
    m["started_at"] = started ? nlohmann::json(*started) : nlohmann::json(nullptr);
    if (!ctx) return env;

    std::lock_guard lock(mu_);
    m["calibrated_at"] = ctx->calibrated_at ? nlohmann::json(*ctx->calibrated_at) : nlohmann::json(nullptr);
    m["snapshot_taken_at"] =
        ctx->snapshot_taken_at ? nlohmann::json(*ctx->snapshot_taken_at) : nlohmann::json(nullptr);
    m["compile_stats"] = ctx->compile_stats.value_or(nlohmann::json(nullptr));
    m["pipeline"] = ctx->compile_stats ? (*ctx->compile_stats)["pipeline"] : nlohmann::json(nullptr);
    m["policy"] = ctx->policy;
    m["origin"] = origin_name(ctx->request.origin);
    m["mitigate"] = ctx->request.mitigate_readout;
    if (ctx->request.mitigate_readout) {
        try {
            env.mitigated_histogram = mitigate(env.histogram, ctx->clbit_confusion);
        } catch (const Error& e) {
            m["mitigation_error"] = std::string(error_code_name(e.code())) + ": " + e.what();
        }
    }
    return env;
}

ResultEnvelope Service::result(const SessionId& session_id, const JobId& job_id) {
    const JobRecord r = owned_job(session_id, job_id);
    if (r.state != JobState::Done) {
        throw Error(ErrorCode::NotDone, "job '" + job_id + "' is " + std::string(job_state_name(r.state)));
    }
    {
        std::lock_guard lock(mu_);
        if (auto it = envelopes_.find(job_id); it != envelopes_.end()) return it->second;
    }
    ResultEnvelope env = build_envelope(r);
    std::lock_guard lock(mu_);
    return envelopes_.try_emplace(job_id, std::move(env)).first->second;
}

void Service::cancel(const SessionId& session_id, const JobId& job_id) {
    (void)owned_job(session_id, job_id);
    qdmi_->job_cancel(job_id);
}

DeviceSummary Service::summarize(const DeviceId& device) const {
    DeviceSummary d;
    d.properties = qdmi_->properties(device);
    d.fomac = fomac::aggregate(*qdmi_, device, config_.fomac);
    d.queue_length = qdmi_->queue_length(device);
    d.est_wait_s = scheduler::estimate_wait(qdmi_->device_load(device), qdmi_->clock().now());
    return d;
}

std::vector<DeviceSummary> Service::list_devices() const {
    std::vector<DeviceSummary> out;
    for (const auto& id : qdmi_->device_list()) out.push_back(summarize(id));
    return out;
}

DeviceSummary Service::device(const DeviceId& device) const { return summarize(device); }

TelemetrySnapshot Service::telemetry(const DeviceId& device) const { return qdmi_->telemetry(device); }

}  // namespace ministack::service
