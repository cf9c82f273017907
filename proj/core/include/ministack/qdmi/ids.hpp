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

#include <array>
#include <cstdint>
#include <mutex>
#include <random>
#include <string>

#include "ministack/clock.hpp"

namespace ministack {

/// 128 random bits as 32 lower-case hex characters.
std::string random_token_hex();

/// Monotonic ULID generator: 48-bit millisecond time + 80 random bits in
/// Crockford base32 (26 chars). Ids from one generator sort in issue order,
/// including several ids issued within the same millisecond.
class UlidGenerator {
public:
    UlidGenerator();
    std::string next(Timestamp now);

private:
    std::mutex mu_;
    std::mt19937_64 rng_;
    std::uint64_t last_ms_ = 0;
    std::array<std::uint8_t, 10> random_{};
};

}  // namespace ministack
