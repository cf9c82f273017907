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

// Discrete-event model of HPC/quantum co-scheduling on one device.
//
// A hybrid job alternates classical phases with quantum bursts while a
// stream of foreign jobs competes for the device. With reservations on,
// every planned burst gets a window owned by the hybrid session. The device
// is driven through a real DeviceQueue, so the window rules under test are
// the production ones.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ministack::scheduler {

struct CoSimConfig {
    bool reservations = false;
    std::uint64_t seed = 1;

    // hybrid job
    double hybrid_start_s = 30;
    int iterations = 20;
    double classical_s = 60;
    double quantum_s = 20;
    int hybrid_priority = 5;

    // foreign workload, Poisson arrivals with exponential run times
    double arrival_rate_per_s = 1.0 / 25.0;
    double mean_exec_s = 15;
    double horizon_s = 2400;
};

struct CoSimResult {
    /// Planned burst windows [start, end).
    std::vector<std::pair<double, double>> windows;
    /// Device busy time inside the windows over their total length.
    double window_busy_fraction = 0;
    /// Device busy time over [0, makespan].
    double overall_busy_fraction = 0;
    /// Time the hybrid job spent waiting for quantum results beyond the
    /// burst length (HPC-side idle time).
    double hybrid_wait_s = 0;
    double hybrid_finish_s = 0;
    double makespan_s = 0;
    int foreign_jobs = 0;
    int foreign_completed = 0;
    /// Foreign jobs whose run overlapped a reservation window.
    int foreign_runs_in_windows = 0;
};

CoSimResult run_cosimulation(const CoSimConfig& config);

}  // namespace ministack::scheduler
