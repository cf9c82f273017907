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

#include "ministack/scheduler/queue.hpp"

#include <algorithm>
#include <atomic>

#include "ministack/error.hpp"

namespace ministack::scheduler {
namespace {

std::atomic<std::uint64_t> g_reservation_ids{1};

}  // namespace

DeviceQueue::DeviceQueue(DeviceId device_id) : device_id_(std::move(device_id)) {}

std::uint64_t DeviceQueue::enqueue(JobId job_id, int priority, SessionId session_id, double est_exec_s) {
    std::lock_guard lock(mu_);
    QueueEntry e{std::move(job_id), priority, next_seq_++, std::move(session_id), est_exec_s};
    auto [it, inserted] = entries_.insert(e);
    index_[e.job_id] = it;
    return e.seq;
}

bool DeviceQueue::eligible(const QueueEntry& e, Timestamp now) const {
    for (const auto& r : reservations_) {
        if (r.end <= now) continue;
        if (r.active_at(now)) return r.owns(e);
        // First window that has not opened yet; later windows start after it.
        return r.owns(e) || now + e.est_exec_s <= r.start;
    }
    return true;
}

std::optional<QueueEntry> DeviceQueue::try_next(Timestamp now, std::uint64_t* watermark) {
    std::lock_guard lock(mu_);
    if (watermark) *watermark = next_seq_ - 1;
    for (auto it = entries_.begin(); it != entries_.end(); ++it) {
        if (!eligible(*it, now)) continue;
        QueueEntry e = *it;
        index_.erase(e.job_id);
        entries_.erase(it);
        return e;
    }
    return std::nullopt;
}

QueueEntry DeviceQueue::next(Timestamp now) {
    auto e = try_next(now);
    if (!e) throw Error(ErrorCode::EmptyQueue, "no eligible entry in queue of '" + device_id_ + "'");
    return *std::move(e);
}

bool DeviceQueue::remove(const JobId& job_id) {
    std::lock_guard lock(mu_);
    auto it = index_.find(job_id);
    if (it == index_.end()) return false;
    entries_.erase(it->second);
    index_.erase(it);
    return true;
}

std::size_t DeviceQueue::size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
}

std::vector<QueueEntry> DeviceQueue::snapshot() const {
    std::lock_guard lock(mu_);
    return {entries_.begin(), entries_.end()};
}

Reservation DeviceQueue::reserve(Timestamp start, Timestamp end, SessionId owner_session, std::set<JobId> owner_jobs) {
    if (!(end > start)) throw Error(ErrorCode::Validation, "reservation window must have end > start");
    std::lock_guard lock(mu_);
    for (const auto& r : reservations_) {
        if (start < r.end && r.start < end) {
            throw Error(ErrorCode::Overlap, "window overlaps reservation " + std::to_string(r.id) + " on '" +
                                                device_id_ + "'");
        }
    }
    Reservation r{g_reservation_ids.fetch_add(1), device_id_, start, end, std::move(owner_session),
                  std::move(owner_jobs)};
    auto pos = std::lower_bound(reservations_.begin(), reservations_.end(), r,
                                [](const Reservation& a, const Reservation& b) { return a.start < b.start; });
    reservations_.insert(pos, r);
    return r;
}

void DeviceQueue::release(std::uint64_t reservation_id) {
    std::lock_guard lock(mu_);
    auto it = std::find_if(reservations_.begin(), reservations_.end(),
                           [&](const Reservation& r) { return r.id == reservation_id; });
    if (it == reservations_.end()) {
        throw Error(ErrorCode::Validation, "unknown reservation " + std::to_string(reservation_id));
    }
    reservations_.erase(it);
}

std::vector<Reservation> DeviceQueue::reservations() const {
    std::lock_guard lock(mu_);
    return reservations_;
}

std::optional<Reservation> DeviceQueue::active_reservation(Timestamp now) const {
    std::lock_guard lock(mu_);
    for (const auto& r : reservations_) {
        if (r.active_at(now)) return r;
    }
    return std::nullopt;
}

}  // namespace ministack::scheduler
