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

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include "ministack/compiler/passes.hpp"
#include "ministack/error.hpp"

namespace ministack::compiler {

using circuit::GateOp;
using circuit::Layout;
using circuit::QuantumCircuit;

namespace {

constexpr int kUnreachable = std::numeric_limits<int>::max();
constexpr int kLookahead = 8;
constexpr std::size_t kRollout = 24;

struct Topology {
    int n = 0;
    std::vector<std::vector<int>> adj;   // ascending
    std::vector<std::vector<int>> dist;  // all pairs, kUnreachable if none
    std::vector<std::vector<double>> fid;

    Topology(const DeviceProperties& d, const TelemetrySnapshot& s) : n(d.num_qubits) {
        adj.assign(n, {});
        for (const auto& [a, b] : d.coupling_map) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        for (auto& a : adj) std::sort(a.begin(), a.end());

        dist.assign(n, std::vector<int>(n, kUnreachable));
        for (int src = 0; src < n; ++src) {
            std::queue<int> q;
            dist[src][src] = 0;
            q.push(src);
            while (!q.empty()) {
                const int v = q.front();
                q.pop();
                for (int u : adj[v]) {
                    if (dist[src][u] == kUnreachable) {
                        dist[src][u] = dist[src][v] + 1;
                        q.push(u);
                    }
                }
            }
        }

        double sum = 0;
        int count = 0;
        for (const auto& [key, f] : s.gate_fidelity) {
            if (key.qubits.size() == 2) {
                sum += f;
                ++count;
            }
        }
        const double fallback = count == 0 ? 1.0 : sum / count;
        fid.assign(n, std::vector<double>(n, 0.0));
        for (const auto& [a, b] : d.coupling_map) {
            double best = -1;
            for (const auto& [gate, arity] : d.native_gates) {
                if (arity != 2) continue;
                if (auto f = s.fidelity(gate, {a, b})) best = std::max(best, *f);
            }
            fid[a][b] = fid[b][a] = best < 0 ? fallback : best;
        }
    }

    [[nodiscard]] bool edge(int a, int b) const { return dist[a][b] == 1; }

    /// Shortest path src..dst with the highest fidelity product; ties go to
    /// the lexicographically smallest vertex sequence.
    [[nodiscard]] std::vector<int> best_path(int src, int dst) const {
        if (dist[src][dst] == kUnreachable) {
            throw Error(ErrorCode::DisconnectedDevice,
                        "no path between physical qubits " + std::to_string(src) + " and " + std::to_string(dst));
        }
        std::vector<double> prod(n, -1.0);
        std::vector<int> next(n, -1);
        // Fill by increasing distance to dst so every successor is final.
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist[a][dst] < dist[b][dst]; });
        prod[dst] = 1.0;
        for (int v : order) {
            if (v == dst || dist[v][dst] == kUnreachable || dist[v][dst] > dist[src][dst]) continue;
            for (int u : adj[v]) {  // ascending, so the first of equal products is lexicographically smallest
                if (dist[u][dst] != dist[v][dst] - 1) continue;
                const double p = fid[v][u] * prod[u];
                if (next[v] < 0 || p > prod[v] * (1 + 1e-12)) {
                    prod[v] = p;
                    next[v] = u;
                }
            }
        }
        std::vector<int> path{src};
        while (path.back() != dst) path.push_back(next[path.back()]);
        return path;
    }
};


struct Mapping {
    std::vector<int> l2p;
    std::vector<int> p2l;

    void swap_physical(int a, int b) {
        const int la = p2l[a], lb = p2l[b];
        if (la >= 0) l2p[la] = b;
        if (lb >= 0) l2p[lb] = a;
        std::swap(p2l[a], p2l[b]);
    }

    /// Walks the first qubit of \`path\` forward by \`split\` steps and the
    /// last one back by the rest, leaving them adjacent. Returns the swaps
    /// as physical pairs.
    std::vector<std::pair<int, int>> meet(const std::vector<int>& path, int split) {
        std::vector<std::pair<int, int>> swaps;
        const int k = static_cast<int>(path.size()) - 1;
        for (int t = 0; t < split; ++t) swaps.emplace_back(path[t], path[t + 1]);
        for (int t = k; t > split + 1; --t) swaps.emplace_back(path[t], path[t - 1]);
        for (const auto& [a, b] : swaps) swap_physical(a, b);
        return swaps;
    }
};

using Interactions = std::vector<std::pair<int, int>>;

/// Split whose mapping keeps the next few interactions closest.
int lookahead_split(const Topology& topo, const Mapping& m, const std::vector<int>& path, const Interactions& pairs,
                    std::size_t from) {
    const int k = static_cast<int>(path.size()) - 1;
    int best = k - 1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int s = k - 1; s >= 0; --s) {
        Mapping trial = m;
        trial.meet(path, s);
        double cost = 0, w = 1;
        for (std::size_t a = from; a < pairs.size() && a < from + kLookahead; ++a) {
            cost += w * topo.dist[trial.l2p[pairs[a].first]][trial.l2p[pairs[a].second]];
            w *= 0.5;
        }
        if (cost < best_cost - 1e-12) {
            best_cost = cost;
            best = s;
        }
    }
    return best;
}

/// Swaps the lookahead policy spends on pairs[from, from + kRollout).
int rollout(const Topology& topo, Mapping m, const Interactions& pairs, std::size_t from) {
    int swaps = 0;
    for (std::size_t i = from; i < pairs.size() && i < from + kRollout; ++i) {
        const int a = m.l2p[pairs[i].first], b = m.l2p[pairs[i].second];
        if (topo.edge(a, b)) continue;
        const auto path = topo.best_path(a, b);
        swaps += static_cast<int>(m.meet(path, lookahead_split(topo, m, path, pairs, i + 1)).size());
    }
    return swaps;
}

}  // namespace

Layout pass_place(const QuantumCircuit& c, const DeviceProperties& device, const TelemetrySnapshot& snapshot) {
    const int n = c.num_qubits();
    if (n > device.num_qubits) {
        throw Error(ErrorCode::TooWide, "circuit needs " + std::to_string(n) + " qubits, device '" + device.device_id +
                                            "' has " + std::to_string(device.num_qubits));
    }
    const Topology topo(device, snapshot);

    std::vector<std::vector<int>> weight(n, std::vector<int>(n, 0));
    std::vector<int> degree(n, 0);
    for (const auto& op : c.ops()) {
        if (op.is_unitary() && op.qubits.size() == 2) {
            ++weight[op.qubits[0]][op.qubits[1]];
            ++weight[op.qubits[1]][op.qubits[0]];
            ++degree[op.qubits[0]];
            ++degree[op.qubits[1]];
        }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return degree[a] > degree[b]; });

    std::vector<int> l2p(n, -1);
    std::vector<bool> used(device.num_qubits, false);
    for (int l : order) {
        bool has_unplaced_partner = false;
        for (int m = 0; m < n; ++m) has_unplaced_partner |= weight[l][m] > 0 && l2p[m] < 0;

        int best = -1;
        double best_cover = 0, best_free_edge = 0;
        long best_dist = 0;
        for (int p = 0; p < device.num_qubits; ++p) {
            if (used[p]) continue;
            double cover = 0;
            long dist = 0;
            for (int m = 0; m < n; ++m) {
                if (weight[l][m] == 0 || l2p[m] < 0) continue;
                if (topo.edge(p, l2p[m])) cover += topo.fid[p][l2p[m]];
                const int d = topo.dist[p][l2p[m]];
                dist += d == kUnreachable ? device.num_qubits : d;
            }
            double free_edge = 0;
            if (has_unplaced_partner) {
                for (int u : topo.adj[p]) {
                    if (!used[u]) free_edge = std::max(free_edge, topo.fid[p][u]);
                }
            }
            const bool better = best < 0 || cover > best_cover || (cover == best_cover && dist < best_dist) ||
                                (cover == best_cover && dist == best_dist && free_edge > best_free_edge);
            if (better) {
                best = p;
                best_cover = cover;
                best_dist = dist;
                best_free_edge = free_edge;
            }
        }
        l2p[l] = best;
        used[best] = true;
    }
    return Layout(std::move(l2p));
}

RouteResult pass_route(const QuantumCircuit& c, const Layout& layout, const DeviceProperties& device,
                       const TelemetrySnapshot& snapshot) {
    const int n = c.num_qubits();
    if (n > device.num_qubits) {
        throw Error(ErrorCode::TooWide, "circuit needs " + std::to_string(n) + " qubits, device '" + device.device_id +
                                            "' has " + std::to_string(device.num_qubits));
    }
    if (layout.size() != n || !layout.valid_for(device.num_qubits)) {
        throw Error(ErrorCode::Validation, "layout does not fit the circuit and device");
    }
    const Topology topo(device, snapshot);
    std::set<std::string> native;
    for (const auto& [name, arity] : device.native_gates) native.insert(name);
    const Translator translator(native);

    Mapping m{layout.map(), std::vector<int>(device.num_qubits, -1)};
    for (int l = 0; l < n; ++l) m.p2l[m.l2p[l]] = l;

    Interactions pairs;
    std::vector<std::size_t> pair_index(c.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        pair_index[i] = pairs.size();
        const auto& op = c.ops()[i];
        if (op.is_unitary() && op.qubits.size() == 2) pairs.emplace_back(op.qubits[0], op.qubits[1]);
    }

    RouteResult result{QuantumCircuit(device.num_qubits, c.num_clbits(), circuit::Level::Native), 0};
    auto& out = result.circuit;
    std::vector<GateOp> expanded;
    auto emit = [&](const GateOp& op) {
        expanded.clear();
        translator.expand(op, expanded);
        for (auto& e : expanded) out.append(std::move(e));
    };

    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& op = c.ops()[i];
        if (op.is_unitary() && op.qubits.size() == 2 && !topo.edge(m.l2p[op.qubits[0]], m.l2p[op.qubits[1]])) {
            const auto path = topo.best_path(m.l2p[op.qubits[0]], m.l2p[op.qubits[1]]);
            const int k = static_cast<int>(path.size()) - 1;
            // Where the two qubits meet on the path is free: the first walks
            // s steps forward, the second k-1-s steps back. Pick s by a short
            // greedy rollout of the following interactions.
            const std::size_t next = pair_index[i] + 1;
            int best_split = k - 1;
            int best_cost = std::numeric_limits<int>::max();
            for (int s = k - 1; s >= 0; --s) {
                Mapping trial = m;
                trial.meet(path, s);
                const int cost = rollout(topo, std::move(trial), pairs, next);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_split = s;
                }
            }
            for (const auto& [a, b] : m.meet(path, best_split)) {
                emit(circuit::make_op("swap", {a, b}));
                ++result.swaps;
            }
        }
        GateOp mapped = op;
        for (int& q : mapped.qubits) q = m.l2p[q];
        emit(mapped);
    }
    out.set_native(device.device_id, layout, Layout(m.l2p));
    return result;
}

}  // namespace ministack::compiler
