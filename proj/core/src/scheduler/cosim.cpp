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

#include "ministack/scheduler/cosim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <string>

#include "ministack/scheduler/queue.hpp"

namespace ministack::scheduler {
namespace {

constexpr const char* kHybridSession = "hybrid";

enum class EventKind { Arrival, HybridSubmit, Completion, Wake };

struct Event {
    double t;
    std::uint64_t order;
    EventKind kind;
    int index;
    bool operator>(const Event& o) const { return t != o.t ? t > o.t : order > o.order; }
};

double exponential(std::mt19937_64& rng, double mean) {
    const double u = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    return -std::log(u) * mean;
}

double overlap(double a0, double a1, double b0, double b1) { return std::max(0.0, std::min(a1, b1) - std::max(a0, b0)); }

}  // namespace

CoSimResult run_cosimulation(const CoSimConfig& cfg) {
    CoSimResult r;
    std::mt19937_64 rng(cfg.seed);
    DeviceQueue queue("cosim");

    for (int k = 0; k < cfg.iterations; ++k) {
        const double start = cfg.hybrid_start_s + k * (cfg.classical_s + cfg.quantum_s) + cfg.classical_s;
        r.windows.emplace_back(start, start + cfg.quantum_s);
        if (cfg.reservations) queue.reserve(start, start + cfg.quantum_s, kHybridSession);
    }

    std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
    std::uint64_t order = 0;
    auto push = [&](double t, EventKind kind, int index) { events.push(Event{t, order++, kind, index}); };

    // Foreign arrivals up to the horizon; priorities uniform in 0..9.
    std::vector<double> foreign_exec;
    std::vector<int> foreign_prio;
    for (double t = exponential(rng, 1.0 / cfg.arrival_rate_per_s); t < cfg.horizon_s;
         t += exponential(rng, 1.0 / cfg.arrival_rate_per_s)) {
        foreign_exec.push_back(exponential(rng, cfg.mean_exec_s));
        foreign_prio.push_back(static_cast<int>(rng() % 10));
        push(t, EventKind::Arrival, static_cast<int>(foreign_exec.size()) - 1);
    }
    r.foreign_jobs = static_cast<int>(foreign_exec.size());
    if (cfg.iterations > 0) push(cfg.hybrid_start_s + cfg.classical_s, EventKind::HybridSubmit, 0);

    bool busy = false;
    double busy_total = 0;
    std::vector<std::pair<double, double>> busy_intervals;
    std::vector<double> hybrid_submitted(static_cast<std::size_t>(cfg.iterations), 0);
    double last_t = 0;
    int hybrid_done = 0;

    auto job_name = [](bool hybrid, int index) { return std::string(hybrid ? "h" : "f") + std::to_string(index); };

    auto dispatch = [&](double now) {
        if (busy || queue.size() == 0) return;
        auto entry = queue.try_next(now);
        if (!entry) {
            // Blocked by a window: wake at the next boundary.
            double wake = std::numeric_limits<double>::infinity();
            for (const auto& res : queue.reservations()) {
                if (res.start > now) wake = std::min(wake, res.start);
                if (res.end > now) wake = std::min(wake, res.end);
            }
            if (std::isfinite(wake)) push(wake, EventKind::Wake, -1);
            return;
        }
        const bool hybrid = entry->job_id[0] == 'h';
        const int index = std::stoi(entry->job_id.substr(1));
        const double end = now + entry->est_exec_s;
        busy = true;
        busy_intervals.emplace_back(now, end);
        if (!hybrid) {
            for (const auto& [ws, we] : r.windows) {
                if (cfg.reservations && overlap(now, end, ws, we) > 0) ++r.foreign_runs_in_windows;
            }
        }
        push(end, EventKind::Completion, hybrid ? -(index + 1) : index);
    };

    while (!events.empty()) {
        const Event ev = events.top();
        events.pop();
        last_t = std::max(last_t, ev.t);
        switch (ev.kind) {
            case EventKind::Arrival:
                queue.enqueue(job_name(false, ev.index), foreign_prio[ev.index], "foreign", foreign_exec[ev.index]);
                break;
            case EventKind::HybridSubmit:
                hybrid_submitted[ev.index] = ev.t;
                queue.enqueue(job_name(true, ev.index), cfg.hybrid_priority, kHybridSession, cfg.quantum_s);
                break;
            case EventKind::Completion:
                busy = false;
                if (ev.index < 0) {
                    const int k = -ev.index - 1;
                    r.hybrid_wait_s += ev.t - hybrid_submitted[k] - cfg.quantum_s;
                    ++hybrid_done;
                    if (k + 1 < cfg.iterations) {
                        push(ev.t + cfg.classical_s, EventKind::HybridSubmit, k + 1);
                    } else {
                        r.hybrid_finish_s = ev.t;
                    }
                } else {
                    ++r.foreign_completed;
                }
                break;
            case EventKind::Wake:
                break;
        }
        dispatch(ev.t);
    }

    r.makespan_s = last_t;
    double window_total = 0, window_busy = 0;
    for (const auto& [ws, we] : r.windows) {
        window_total += we - ws;
        for (const auto& [b0, b1] : busy_intervals) window_busy += overlap(b0, b1, ws, we);
    }
    for (const auto& [b0, b1] : busy_intervals) busy_total += b1 - b0;
    r.window_busy_fraction = window_total > 0 ? window_busy / window_total : 0;
    r.overall_busy_fraction = r.makespan_s > 0 ? busy_total / r.makespan_s : 0;
    return r;
}

}  // namespace ministack::scheduler
