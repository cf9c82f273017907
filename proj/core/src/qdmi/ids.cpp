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

#include "ministack/qdmi/ids.hpp"

#include <algorithm>
#include <cstdio>

namespace ministack {
namespace {

constexpr char kCrockford[] = "0123456789ABCDEFGHJKMNPQRSTVWXYZ";

std::mt19937_64 seeded_engine() {
    std::random_device rd;
    std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd()};
    return std::mt19937_64(seq);
}

}  // namespace

std::string random_token_hex() {
    thread_local std::mt19937_64 rng = seeded_engine();
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng()),
                  static_cast<unsigned long long>(rng()));
    return std::string(buf, 32);
}

UlidGenerator::UlidGenerator() : rng_(seeded_engine()) {}

std::string UlidGenerator::next(Timestamp now) {
    std::lock_guard lock(mu_);
    std::uint64_t ms = now > 0 ? static_cast<std::uint64_t>(now * 1000.0) : 0;
    ms &= (std::uint64_t{1} << 48) - 1;
    if (ms <= last_ms_) {
        // Same (or earlier) millisecond: keep the time part and bump the
        // random part so ids stay strictly increasing.
        ms = last_ms_;
        for (int i = 9; i >= 0; --i) {
            if (++random_[i] != 0) break;
        }
    } else {
        last_ms_ = ms;
        for (auto& b : random_) b = static_cast<std::uint8_t>(rng_());
        random_[0] &= 0x7f;  // headroom for increments
    }

    // 128-bit big-endian value: 6 time bytes then 10 random bytes.
    std::array<std::uint8_t, 16> bytes{};
    for (int i = 0; i < 6; ++i) bytes[i] = static_cast<std::uint8_t>(ms >> (8 * (5 - i)));
    std::copy(random_.begin(), random_.end(), bytes.begin() + 6);

    std::string out(26, '0');
    // 26 base32 digits cover 130 bits; the top two bits are always zero.
    for (int digit = 25, bit = 0; digit >= 0; --digit, bit += 5) {
        int v = 0;
        for (int k = 0; k < 5; ++k) {
            const int b = bit + k;
            if (b >= 128) break;
            const int byte = 15 - b / 8;
            v |= ((bytes[byte] >> (b % 8)) & 1) << k;
        }
        out[digit] = kCrockford[v];
    }
    return out;
}

}  // namespace ministack
