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
#include <string_view>
#include <vector>

#include "ministack/backends/profile.hpp"
#include "ministack/clock.hpp"
#include "ministack/qdmi/types.hpp"

namespace ministack::backends {

/// Deterministic standard normal draw keyed by (seed, tag, qubits, bucket),
/// truncated to +/-4.
double keyed_gaussian(std::uint64_t seed, std::string_view tag, const std::vector<int>& qubits,
                      std::int64_t bucket);

/// Synthetic calibration data for `profile` at time `now`.
///
/// Values depend only on the refresh bucket floor(now / refresh_interval),
/// so two calls inside one interval return identical snapshots. Gate entries
/// cover every 1q native gate on every qubit and every 2q native gate on
/// every coupling edge.
TelemetrySnapshot generate_telemetry(const DeviceProfile& profile, Timestamp now);

}  // namespace ministack::backends
