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

#include "ministack/service/postprocess.hpp"

#include <cmath>

#include "ministack/error.hpp"

namespace ministack::service {

Histogram histogram(const Counts& counts) {
    const std::uint64_t total = counts.sum();
    if (counts.counts.empty() || total == 0) throw Error(ErrorCode::Validation, "empty counts");
    Histogram h;
    for (const auto& [key, n] : counts.counts) {
        if (n > 0) h[key] = static_cast<double>(n) / static_cast<double>(total);
    }
    return h;
}

Histogram mitigate(const Histogram& measured, const std::vector<std::pair<double, double>>& confusion) {
    const int n = static_cast<int>(confusion.size());
    if (n > kMaxMitigatedBits) {
        throw Error(ErrorCode::Limit, "mitigation supports at most " + std::to_string(kMaxMitigatedBits) +
                                          " measured bits, got " + std::to_string(n));
    }
    for (int k = 0; k < n; ++k) {
        const auto [p00, p11] = confusion[k];
        if (std::abs(p00 + p11 - 1) < kSingularTolerance) {
            throw Error(ErrorCode::SingularConfusion, "confusion matrix of bit " + std::to_string(k) + " is singular");
        }
    }

    std::vector<double> v(std::size_t{1} << n, 0.0);
    for (const auto& [key, p] : measured) {
        if (static_cast<int>(key.size()) != n) {
            throw Error(ErrorCode::Validation, "key '" + key + "' does not have " + std::to_string(n) + " bits");
        }
        std::size_t index = 0;
        for (int k = 0; k < n; ++k) {
            const char c = key[n - 1 - k];
            if (c != '0' && c != '1') throw Error(ErrorCode::Validation, "key '" + key + "' is not a bitstring");
            if (c == '1') index |= std::size_t{1} << k;
        }
        v[index] += p;
    }

    // Tensored inverse: one 2x2 solve per bit.
    for (int k = 0; k < n; ++k) {
        const auto [p00, p11] = confusion[k];
        const double det = p00 + p11 - 1;
        const double i00 = p11 / det, i01 = -(1 - p11) / det;
        const double i10 = -(1 - p00) / det, i11 = p00 / det;
        const std::size_t bit = std::size_t{1} << k;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i & bit) continue;
            const double a = v[i], b = v[i | bit];
            v[i] = i00 * a + i01 * b;
            v[i | bit] = i10 * a + i11 * b;
        }
    }

    double total = 0;
    for (double& x : v) {
        if (x < 0) x = 0;
        total += x;
    }
    if (!(total > 0)) throw Error(ErrorCode::SingularConfusion, "mitigated distribution vanished");
    Histogram out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] <= 0) continue;
        std::string key(n, '0');
        for (int k = 0; k < n; ++k) {
            if (i & (std::size_t{1} << k)) key[n - 1 - k] = '1';
        }
        out.emplace(std::move(key), v[i] / total);
    }
    return out;
}

PostProcessed post_process(const Counts& counts, bool mitigate_readout,
                           const std::vector<std::pair<double, double>>& confusion) {
    PostProcessed out;
    out.histogram = histogram(counts);
    if (mitigate_readout) out.mitigated = mitigate(out.histogram, confusion);
    return out;
}

}  // namespace ministack::service
