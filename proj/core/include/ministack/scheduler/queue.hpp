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

// Lower scheduling level: one priority queue per device, plus reservation
// windows used for HPC co-scheduling.

#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "ministack/qdmi/types.hpp"

namespace ministack::scheduler {

inline constexpr int kMinPriority = 0;
inline constexpr int kMaxPriority = 9;

struct QueueEntry {
    JobId job_id;
    int priority = 0;
    std::uint64_t seq = 0;
    SessionId session_id;
    double est_exec_s = 0;
};

/// A device time window set aside for one session (and optionally an
/// explicit job set).
struct Reservation {
    std::uint64_t id = 0;
    DeviceId device_id;
    Timestamp start = 0;
    Timestamp end = 0;
    SessionId owner_session;
    std::set<JobId> owner_jobs;

    [[nodiscard]] bool owns(const QueueEntry& e) const {
        return e.session_id == owner_session || owner_jobs.contains(e.job_id);
    }
    [[nodiscard]] bool active_at(Timestamp t) const { return start <= t && t < end; }
};

/// Internally synchronised priority queue for one device.
///
/// Dequeue order is priority descending, then seq ascending (FIFO within a
/// priority). Priorities are fixed at submission; there is no aging, so a
/// steady stream of high-priority work can starve lower priorities.
///
/// While a reservation is active only entries it owns are served. Outside a
/// window, a foreign entry is only started if its estimate ends before the
/// next window opens, so no foreign job runs inside a window.
class DeviceQueue {
public:
    explicit DeviceQueue(DeviceId device_id = {});

    DeviceQueue(const DeviceQueue&) = delete;
    DeviceQueue& operator=(const DeviceQueue&) = delete;

    /// Adds an entry and returns its sequence number (strictly increasing
    /// per queue).
    std::uint64_t enqueue(JobId job_id, int priority, SessionId session_id = {}, double est_exec_s = 0);

    /// Pops the first eligible entry at time `now`. If `watermark` is given it
    /// receives the highest seq issued so far, read under the same lock.
    std::optional<QueueEntry> try_next(Timestamp now, std::uint64_t* watermark = nullptr);
    /// As try_next but throws Error(EmptyQueue) when nothing is eligible.
    QueueEntry next(Timestamp now);

    bool remove(const JobId& job_id);
    [[nodiscard]] std::size_t size() const;
    /// Entries in dequeue order (ignoring reservations).
    [[nodiscard]] std::vector<QueueEntry> snapshot() const;

    /// Throws Error(Overlap) if the window intersects an existing one and
    /// Error(Validation) if end <= start.
    Reservation reserve(Timestamp start, Timestamp end, SessionId owner_session, std::set<JobId> owner_jobs = {});
    /// Throws Error(Validation) for an unknown id.
    void release(std::uint64_t reservation_id);
    [[nodiscard]] std::vector<Reservation> reservations() const;
    [[nodiscard]] std::optional<Reservation> active_reservation(Timestamp now) const;

    [[nodiscard]] const DeviceId& device_id() const { return device_id_; }

private:
    struct Order {
        bool operator()(const QueueEntry& a, const QueueEntry& b) const {
            if (a.priority != b.priority) return a.priority > b.priority;
            return a.seq < b.seq;
        }
    };

    bool eligible(const QueueEntry& e, Timestamp now) const;

    DeviceId device_id_;
    mutable std::mutex mu_;
    std::set<QueueEntry, Order> entries_;
    std::unordered_map<JobId, std::set<QueueEntry, Order>::iterator> index_;
    std::uint64_t next_seq_ = 1;
    std::vector<Reservation> reservations_;  // sorted by start
};

}  // namespace ministack::scheduler
