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

#include "ministack/service/origin.hpp"

#include <algorithm>
#include <charconv>

namespace ministack::service {

std::string_view origin_name(Origin origin) { return origin == Origin::Local ? "LOCAL" : "REMOTE"; }

bool Cidr::contains(std::uint32_t address) const {
    if (prefix == 0) return true;
    const std::uint32_t mask = ~std::uint32_t{0} << (32 - prefix);
    return (address & mask) == (network & mask);
}

std::optional<std::uint32_t> parse_ipv4(std::string_view text) {
    std::uint32_t out = 0;
    for (int part = 0; part < 4; ++part) {
        if (part > 0) {
            if (text.empty() || text.front() != '.') return std::nullopt;
            text.remove_prefix(1);
        }
        unsigned value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        const auto used = static_cast<std::size_t>(ptr - text.data());
        if (ec != std::errc{} || used == 0 || used > 3 || value > 255) return std::nullopt;
        out = (out << 8) | value;
        text.remove_prefix(used);
    }
    if (!text.empty()) return std::nullopt;
    return out;
}

std::optional<Cidr> parse_cidr(std::string_view text) {
    const auto slash = text.find('/');
    auto address = parse_ipv4(text.substr(0, slash));
    if (!address) return std::nullopt;
    int prefix = 32;
    if (slash != std::string_view::npos) {
        auto digits = text.substr(slash + 1);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), prefix);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || prefix < 0 || prefix > 32) {
            return std::nullopt;
        }
    }
    return Cidr{*address, prefix};
}

Origin detect_origin(std::string_view remote_addr, bool gateway_header_present, const std::vector<Cidr>& local) {
    if (gateway_header_present) return Origin::Local;
    // IPv4-mapped IPv6 addresses arrive as ::ffff:a.b.c.d.
    constexpr std::string_view mapped = "::ffff:";
    if (remote_addr.substr(0, mapped.size()) == mapped) remote_addr.remove_prefix(mapped.size());
    auto address = parse_ipv4(remote_addr);
    if (!address) return Origin::Remote;
    const bool hit = std::any_of(local.begin(), local.end(), [&](const Cidr& c) { return c.contains(*address); });
    return hit ? Origin::Local : Origin::Remote;
}

int effective_priority(int requested, Origin origin) {
    return origin == Origin::Local ? std::min(requested + 1, 9) : requested;
}

}  // namespace ministack::service
