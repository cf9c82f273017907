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

#pragma once

#include <atomic>
#include <chrono>

namespace ministack {

/// Seconds since the Unix epoch.
using Timestamp = double;

class Clock {
public:
    virtual ~Clock() = default;
    [[nodiscard]] virtual Timestamp now() const = 0;
};

class SystemClock final : public Clock {
public:
    [[nodiscard]] Timestamp now() const override {
        using namespace std::chrono;
        return duration<double>(system_clock::now().time_since_epoch()).count();
    }
};

/// Test clock; time only moves when told to.
class ManualClock final : public Clock {
public:
    explicit ManualClock(Timestamp start = 0.0) : now_(start) {}

    [[nodiscard]] Timestamp now() const override { return now_.load(); }
    void set(Timestamp t) { now_.store(t); }
    void advance(double seconds) {
        Timestamp cur = now_.load();
        while (!now_.compare_exchange_weak(cur, cur + seconds)) {
        }
    }

private:
    std::atomic<Timestamp> now_;
};

}  // namespace ministack
