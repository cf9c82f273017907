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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ministack::service {

enum class Origin { Local, Remote };

std::string_view origin_name(Origin origin);

/// IPv4 network in CIDR notation.
struct Cidr {
    std::uint32_t network = 0;
    int prefix = 0;

    [[nodiscard]] bool contains(std::uint32_t address) const;
};

std::optional<std::uint32_t> parse_ipv4(std::string_view text);
/// "a.b.c.d/n", or a bare address meaning /32.
std::optional<Cidr> parse_cidr(std::string_view text);

/// LOCAL iff the source address falls in one of the CIDRs or the trusted
/// gateway header was present. Unparseable addresses (IPv6) are REMOTE
/// unless the header is present.
Origin detect_origin(std::string_view remote_addr, bool gateway_header_present, const std::vector<Cidr>& local);

/// LOCAL submissions get one priority step, capped at 9.
int effective_priority(int requested, Origin origin);

}  // namespace ministack::service
