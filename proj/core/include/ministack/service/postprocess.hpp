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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ministack/qdmi/types.hpp"

namespace ministack::service {

using Histogram = std::map<std::string, double>;

/// Mitigation works on a dense vector of 2^n entries.
inline constexpr int kMaxMitigatedBits = 16;
/// Below this |p0|0 + p1|1 - 1| the confusion matrix counts as singular.
inline constexpr double kSingularTolerance = 1e-12;

/// counts / shots. Throws Validation for empty counts.
Histogram histogram(const Counts& counts);

/// Applies the inverse of each bit's confusion matrix
///
///     [ p0|0      1 - p1|1 ]
///     [ 1 - p0|0  p1|1     ]
///
/// to the measured distribution (bit k of a key is its k-th character from
/// the right), clips negative entries to 0 and renormalises. Entries that
/// end up exactly 0 are dropped. Throws SingularConfusion, Limit for more
/// than kMaxMitigatedBits bits, Validation for a width mismatch.
Histogram mitigate(const Histogram& measured, const std::vector<std::pair<double, double>>& confusion);

struct PostProcessed {
    Histogram histogram;
    std::optional<Histogram> mitigated;
};

/// The histogram and, when mitigate_readout is set, its mitigated form.
PostProcessed post_process(const Counts& counts, bool mitigate_readout,
                           const std::vector<std::pair<double, double>>& confusion);

}  // namespace ministack::service
