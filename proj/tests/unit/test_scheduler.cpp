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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <thread>

#include "ministack/circuit/qasm.hpp"
#include "ministack/error.hpp"
#include "ministack/scheduler/cosim.hpp"
#include "ministack/scheduler/queue.hpp"
#include "ministack/scheduler/select.hpp"
#include "ministack/scheduler/timing.hpp"
#include "oracles.hpp"

namespace ministack {
namespace {

using circuit::make_op;
using circuit::QuantumCircuit;
using scheduler::DeviceCandidate;
using scheduler::DeviceQueue;
using scheduler::QueueEntry;

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::Io;
}

// --- timing --------------------------------------------------------------------------

DeviceProperties timed_line() {
    auto d = testing::line_device(3);
    d.gate_durations = {{"prx", 1.0}, {"cz", 10.0}, {"measure", 100.0}};
    d.shot_overhead = 0.5;
    d.setup_overhead = 7;
    return d;
}

TEST(Timing, CriticalPathLayers) {
    QuantumCircuit c(3, 3, circuit::Level::Native);
    c.append(make_op("prx", {0}, {1, 0}));
    c.append(make_op("prx", {1}, {1, 0}));
    c.append(make_op("cz", {0, 1}));
    c.append(make_op("prx", {2}, {1, 0}));  // shares layer 0
    EXPECT_DOUBLE_EQ(scheduler::critical_path_duration(c, timed_line()), 11.0);
    c.append(circuit::make_measure(2, 2));  // layer 1 next to cz
    EXPECT_DOUBLE_EQ(scheduler::critical_path_duration(c, timed_line()), 101.0);
}

TEST(Timing, BarrierSynchronisesWithoutLayer) {
    QuantumCircuit c(2, 0, circuit::Level::Native);
    c.append(make_op("prx", {0}, {1, 0}));
    c.append(make_op("prx", {0}, {1, 0}));
    c.append(make_op("barrier", {0, 1}));
    c.append(make_op("prx", {1}, {1, 0}));
    EXPECT_DOUBLE_EQ(scheduler::critical_path_duration(c, timed_line()), 3.0);
    EXPECT_DOUBLE_EQ(scheduler::critical_path_duration(QuantumCircuit(2, 0, circuit::Level::Native), timed_line()), 0);
}

TEST(Timing, GenericEstimateAndExecution) {
    QuantumCircuit g(3, 0);
    g.append(make_op("h", {0}));
    g.append(make_op("swap", {0, 1}));
    g.append(make_op("cx", {1, 2}));
    EXPECT_DOUBLE_EQ(scheduler::generic_critical_path(g, timed_line()), 1 + 30 + 10);
    EXPECT_DOUBLE_EQ(scheduler::estimate_execution_time(41, 100, timed_line()), 7 + 100 * 41.5);
}

TEST(Timing, EstimateWait) {
    scheduler::DeviceLoad load;
    EXPECT_EQ(scheduler::estimate_wait(load, 0), 0);
    load.queued_estimates = {3, 4.5};
    load.running = scheduler::RunningJob{100, 10};
    EXPECT_DOUBLE_EQ(scheduler::estimate_wait(load, 104), 7.5 + 6);
    EXPECT_DOUBLE_EQ(scheduler::estimate_wait(load, 500), 7.5);
}

// --- queue -------------------------------------------------------------------------

bool before(const QueueEntry& a, const QueueEntry& b) {
    return std::make_pair(-a.priority, a.seq) < std::make_pair(-b.priority, b.seq);
}

TEST(Queue, OrderAndFifo) {
    DeviceQueue q("d");
    q.enqueue("a", 0);
    q.enqueue("b", 5);
    q.enqueue("c", 5);
    q.enqueue("d", 9);
    q.enqueue("e", 0);
    std::vector<std::string> order;
    while (auto e = q.try_next(0)) order.push_back(e->job_id);
    EXPECT_EQ(order, (std::vector<std::string>{"d", "b", "c", "a", "e"}));
    EXPECT_EQ(code_of([&] { q.next(0); }), ErrorCode::EmptyQueue);
}

TEST(Queue, RemoveAndSnapshot) {
    DeviceQueue q("d");
    const auto s1 = q.enqueue("a", 1);
    const auto s2 = q.enqueue("b", 2);
    EXPECT_LT(s1, s2);
    EXPECT_TRUE(q.remove("a"));
    EXPECT_FALSE(q.remove("a"));
    EXPECT_EQ(q.size(), 1u);
    ASSERT_EQ(q.snapshot().size(), 1u);
    EXPECT_EQ(q.snapshot()[0].job_id, "b");
}

TEST(Queue, ConcurrentProducersMatchSortOracle) {
    constexpr int kProducers = 8;
    constexpr int kTotal = 100000;
    DeviceQueue q("d");
    std::vector<std::vector<QueueEntry>> made(kProducers);
    std::vector<std::thread> threads;
    for (int p = 0; p < kProducers; ++p) {
        threads.emplace_back([&, p] {
            std::mt19937_64 rng(p);
            for (int i = 0; i < kTotal / kProducers; ++i) {
                QueueEntry e;
                e.job_id = std::to_string(p) + "-" + std::to_string(i);
                e.priority = static_cast<int>(rng() % 10);
                e.seq = q.enqueue(e.job_id, e.priority);
                made[p].push_back(e);
            }
        });
    }
    for (auto& t : threads) t.join();
    std::vector<QueueEntry> expected;
    for (auto& m : made) expected.insert(expected.end(), m.begin(), m.end());
    std::sort(expected.begin(), expected.end(), before);
    std::set<std::uint64_t> seqs;
    for (const auto& e : expected) seqs.insert(e.seq);
    ASSERT_EQ(seqs.size(), static_cast<std::size_t>(kTotal));

    std::size_t i = 0;
    while (auto e = q.try_next(0)) {
        ASSERT_LT(i, expected.size());
        ASSERT_EQ(e->job_id, expected[i].job_id) << "position " << i;
        ASSERT_EQ(e->seq, expected[i].seq);
        ++i;
    }
    EXPECT_EQ(i, expected.size());
}

// A consumer running against the producers must always pop the best entry
// among those already issued (seq <= watermark) and not yet popped.
TEST(Queue, ConcurrentConsumerPopsBestVisible) {
    constexpr int kProducers = 8;
    constexpr int kPerProducer = 5000;
    DeviceQueue q("d");
    std::atomic<int> done{0};
    std::vector<std::thread> threads;
    for (int p = 0; p < kProducers; ++p) {
        threads.emplace_back([&, p] {
            std::mt19937_64 rng(100 + p);
            for (int i = 0; i < kPerProducer; ++i) {
                q.enqueue(std::to_string(p) + "-" + std::to_string(i), static_cast<int>(rng() % 10));
            }
            ++done;
        });
    }
    std::vector<std::pair<QueueEntry, std::uint64_t>> pops;
    while (static_cast<int>(pops.size()) < kProducers * kPerProducer) {
        std::uint64_t mark = 0;
        if (auto e = q.try_next(0, &mark)) {
            pops.emplace_back(*e, mark);
        } else if (done == kProducers && q.size() == 0) {
            break;
        }
    }
    for (auto& t : threads) t.join();
    ASSERT_EQ(pops.size(), static_cast<std::size_t>(kProducers * kPerProducer));

    std::map<std::uint64_t, QueueEntry> by_seq;
    for (const auto& [e, mark] : pops) by_seq[e.seq] = e;
    auto cmp = [](const QueueEntry& a, const QueueEntry& b) { return before(a, b); };
    std::set<QueueEntry, decltype(cmp)> visible(cmp);
    std::uint64_t added = 0;
    std::uint64_t last_mark = 0;
    for (const auto& [e, mark] : pops) {
        ASSERT_GE(mark, last_mark);
        last_mark = mark;
        while (added < mark) {
            ++added;
            visible.insert(by_seq.at(added));
        }
        ASSERT_FALSE(visible.empty());
        ASSERT_EQ(visible.begin()->seq, e.seq);
        visible.erase(visible.begin());
    }
}

TEST(Queue, ReservationWindows) {
    DeviceQueue q("d");
    const auto r = q.reserve(100, 200, "owner");
    EXPECT_EQ(code_of([&] { q.reserve(150, 250, "x"); }), ErrorCode::Overlap);
    EXPECT_EQ(code_of([&] { q.reserve(300, 300, "x"); }), ErrorCode::Validation);
    q.enqueue("foreign", 9, "other", 10);
    q.enqueue("mine", 0, "owner", 10);
    // Inside the window only the owner is served.
    auto e = q.try_next(150);
    ASSERT_TRUE(e);
    EXPECT_EQ(e->job_id, "mine");
    EXPECT_FALSE(q.try_next(150));
    // Before the window a foreign job that would overrun it waits.
    EXPECT_FALSE(q.try_next(95));
    e = q.try_next(80);
    ASSERT_TRUE(e);
    EXPECT_EQ(e->job_id, "foreign");
    ASSERT_TRUE(q.active_reservation(100));
    EXPECT_FALSE(q.active_reservation(200));
    q.release(r.id);
    EXPECT_TRUE(q.reservations().empty());
    EXPECT_EQ(code_of([&] { q.release(r.id); }), ErrorCode::Validation);
}

TEST(Queue, ReservationOwnsExplicitJobs) {
    DeviceQueue q("d");
    q.reserve(0, 100, "owner", {"listed"});
    q.enqueue("listed", 0, "someone", 1);
    q.enqueue("other", 0, "someone", 1);
    auto e = q.try_next(10);
    ASSERT_TRUE(e);
    EXPECT_EQ(e->job_id, "listed");
    EXPECT_FALSE(q.try_next(10));
}

// --- selection -------------------------------------------------------------------------

std::vector<DeviceCandidate> random_candidates(std::mt19937_64& rng, int n) {
    std::vector<DeviceCandidate> out;
    for (int i = 0; i < n; ++i) {
        DeviceCandidate c;
        c.device_id = "d" + std::to_string(i);
        // Coarse grids produce plenty of ties and exact duplicates.
        c.est_wait_s = static_cast<double>(rng() % 5);
        c.esp = static_cast<double>(rng() % 5) / 4.0;
        c.est_exec_s = static_cast<double>(rng() % 5) * 0.5;
        c.healthy = rng() % 6 != 0;
        out.push_back(c);
    }
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

TEST(Select, DominationExamples) {
    DeviceCandidate a{"a", 1, 0.9, 1, true};
    DeviceCandidate b{"b", 2, 0.9, 1, true};
    DeviceCandidate c{"c", 1, 0.9, 1, true};
    EXPECT_TRUE(scheduler::dominates(a, b));
    EXPECT_FALSE(scheduler::dominates(b, a));
    EXPECT_FALSE(scheduler::dominates(a, c));
    DeviceCandidate d{"d", 0.5, 0.5, 1, true};
    EXPECT_FALSE(scheduler::dominates(a, d));
    EXPECT_FALSE(scheduler::dominates(d, a));
    EXPECT_EQ(scheduler::pareto_front({a, b, c, d}), (std::vector<DeviceCandidate>{a, c, d}));
}

TEST(Select, FrontMatchesBruteForce) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto cands = random_candidates(rng, 1 + static_cast<int>(rng() % 8));
        const bool any_healthy = std::any_of(cands.begin(), cands.end(), [](auto& c) { return c.healthy; });
        if (!any_healthy) {
            EXPECT_EQ(code_of([&] { scheduler::pareto_front(cands); }), ErrorCode::NoHealthyDevice);
            continue;
        }
        EXPECT_EQ(scheduler::pareto_front(cands), testing::brute_force_front(cands));
    }
}

TEST(Select, SelectionMatchesBruteForce) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 2000; ++trial) {
        auto cands = random_candidates(rng, 1 + static_cast<int>(rng() % 8));
        cands[0].healthy = true;
        scheduler::SchedulingPolicy policy;
        const double a = u(rng), b = u(rng) * (1 - a);
        policy.w_esp = a;
        policy.w_wait = b;
        policy.w_exec = 1 - a - b;
        const auto chosen = scheduler::select_device(cands, policy);
        EXPECT_EQ(chosen, testing::brute_force_select(cands, policy));
        for (const auto& c : cands) {
            if (c.device_id == chosen) continue;
            const auto& winner = *std::find_if(cands.begin(), cands.end(), [&](auto& x) { return x.device_id == chosen; });
            EXPECT_FALSE(c.healthy && scheduler::dominates(c, winner));
        }
    }
}

TEST(Select, AllowListAndTies) {
    std::vector<DeviceCandidate> cands{{"b", 1, 0.9, 1, true}, {"a", 1, 0.9, 1, true}, {"c", 0, 1.0, 0, true}};
    scheduler::SchedulingPolicy p;
    EXPECT_EQ(scheduler::select_device(cands, p), "c");
    p.allow_list = std::set<DeviceId>{"a", "b"};
    EXPECT_EQ(scheduler::select_device(cands, p), "a");
    p.allow_list = std::set<DeviceId>{"zzz"};
    EXPECT_EQ(code_of([&] { scheduler::select_device(cands, p); }), ErrorCode::NoHealthyDevice);
}

TEST(Select, InputValidation) {
    EXPECT_EQ(code_of([] { scheduler::pareto_front({}); }), ErrorCode::NoHealthyDevice);
    EXPECT_EQ(code_of([] { scheduler::pareto_front({{"a", -1, 0.5, 1, true}}); }), ErrorCode::Validation);
    EXPECT_EQ(code_of([] { scheduler::pareto_front({{"a", 1, 1.5, 1, true}}); }), ErrorCode::Validation);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_EQ(code_of([&] { scheduler::pareto_front({{"a", 1, 0.5, nan, true}}); }), ErrorCode::Validation);
}

TEST(Select, PolicyValidation) {
    scheduler::SchedulingPolicy p;
    EXPECT_NO_THROW(p.validate());
    p.w_esp = 0.6;
    EXPECT_EQ(code_of([&] { p.validate(); }), ErrorCode::InvalidPolicy);
    p = {};
    p.w_wait = -0.1;
    p.w_esp = 0.9;
    EXPECT_EQ(code_of([&] { p.validate(); }), ErrorCode::InvalidPolicy);
    EXPECT_EQ(code_of([] { nlohmann::json{{"w_esp", 1.0}}.get<scheduler::SchedulingPolicy>(); }),
              ErrorCode::InvalidPolicy);
    const auto ok = nlohmann::json{{"w_esp", 1.0}, {"w_wait", 0.0}, {"w_exec", 0.0}}.get<scheduler::SchedulingPolicy>();
    EXPECT_EQ(ok.w_esp, 1.0);
}

// --- co-scheduling model -------------------------------------------------------------

TEST(CoSim, ReservationsKeepWindowsBusy) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        scheduler::CoSimConfig cfg;
        cfg.seed = seed;
        const auto base = scheduler::run_cosimulation(cfg);
        cfg.reservations = true;
        const auto res = scheduler::run_cosimulation(cfg);
        EXPECT_EQ(res.foreign_jobs, base.foreign_jobs) << seed;
        EXPECT_EQ(res.foreign_runs_in_windows, 0) << seed;
        EXPECT_GE(res.window_busy_fraction, base.window_busy_fraction) << seed;
        EXPECT_LE(res.hybrid_wait_s, base.hybrid_wait_s) << seed;
        EXPECT_LE(res.window_busy_fraction, 1.0 + 1e-12);
        EXPECT_EQ(res.windows.size(), static_cast<std::size_t>(cfg.iterations));
    }
}

TEST(CoSim, Deterministic) {
    scheduler::CoSimConfig cfg;
    cfg.reservations = true;
    const auto a = scheduler::run_cosimulation(cfg);
    const auto b = scheduler::run_cosimulation(cfg);
    EXPECT_EQ(a.windows, b.windows);
    EXPECT_EQ(a.window_busy_fraction, b.window_busy_fraction);
    EXPECT_EQ(a.makespan_s, b.makespan_s);
}

}  // namespace
}  // namespace ministack
