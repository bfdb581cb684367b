#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dyncomm/graph.hpp"
#include "dyncomm/partition.hpp"
#include "dyncomm/random.hpp"

namespace dyncomm {

struct MultilevelParams {
    double resolution = 1.0;
    std::uint64_t seed = 0;
};

namespace detail {

// Aggregated working graph for the multilevel passes. strength[i] counts the
// self-loop weight twice, so total_strength stays 2m across levels.
struct LevelGraph {
    std::uint32_t n = 0;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // no self entries
    std::vector<double> self_loop;
    std::vector<double> strength;
    double total_strength = 0.0;
};

inline LevelGraph level_from(const Graph& g) {
    LevelGraph lg;
    lg.n = g.node_count();
    lg.adj.resize(lg.n);
    lg.self_loop.assign(lg.n, 0.0);
    for (auto [u, v] : g.edges()) {
        lg.adj[u].emplace_back(v, 1.0);
        lg.adj[v].emplace_back(u, 1.0);
    }
    lg.strength.assign(lg.n, 0.0);
    for (std::uint32_t v = 0; v < lg.n; ++v) {
        for (auto& [w, wt] : lg.adj[v]) lg.strength[v] += wt;
        lg.total_strength += lg.strength[v];
    }
    return lg;
}

// One round of local moves. Node order is shuffled once per level; passes
// repeat until a full pass moves nothing. Equal gains go to the lowest
// community id (candidates are scanned in ascending id order).
inline bool local_moves(const LevelGraph& lg, double resolution, Rng& rng,
                        std::vector<std::uint32_t>& comm) {
    const std::uint32_t n = lg.n;
    comm.resize(n);
    std::vector<double> tot(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        comm[v] = v;
        tot[v] = lg.strength[v];
    }
    std::vector<std::uint32_t> order(n);
    for (std::uint32_t v = 0; v < n; ++v) order[v] = v;
    rng.shuffle(order);

    const double m2 = lg.total_strength;
    if (m2 <= 0.0) return false;
    std::vector<double> weight_to(n, 0.0);
    std::vector<std::uint32_t> candidates;
    bool any_move = false;
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::uint32_t v : order) {
            const std::uint32_t own = comm[v];
            candidates.clear();
            candidates.push_back(own);
            for (auto& [w, wt] : lg.adj[v]) {
                std::uint32_t c = comm[w];
                if (weight_to[c] == 0.0 && c != own) candidates.push_back(c);
                weight_to[c] += wt;
            }
            const double k = lg.strength[v];
            tot[own] -= k;
            std::sort(candidates.begin(), candidates.end());
            // Moves need a strictly positive gain over staying; scanning in
            // ascending id order makes the lowest community id win exact ties.
            std::uint32_t best = own;
            double best_gain = weight_to[own] - resolution * tot[own] * k / m2;
            for (std::uint32_t c : candidates) {
                if (c == own) continue;
                double gain = weight_to[c] - resolution * tot[c] * k / m2;
                if (gain > best_gain) {
                    best_gain = gain;
                    best = c;
                }
            }
            for (std::uint32_t c : candidates) weight_to[c] = 0.0;
            tot[best] += k;
            if (best != own) {
                comm[v] = best;
                moved = true;
                any_move = true;
            }
        }
    }
    return any_move;
}

inline LevelGraph aggregate(const LevelGraph& lg, const std::vector<std::uint32_t>& dense_comm,
                            std::uint32_t community_count) {
    LevelGraph next;
    next.n = community_count;
    next.adj.resize(next.n);
    next.self_loop.assign(next.n, 0.0);
    std::vector<double> row(next.n, 0.0);
    std::vector<std::vector<std::uint32_t>> members(next.n);
    for (std::uint32_t v = 0; v < lg.n; ++v) members[dense_comm[v]].push_back(v);
    std::vector<std::uint32_t> cols;
    for (std::uint32_t c = 0; c < next.n; ++c) {
        cols.clear();
        for (std::uint32_t v : members[c]) {
            next.self_loop[c] += lg.self_loop[v];
            for (auto& [w, wt] : lg.adj[v]) {
                std::uint32_t cw = dense_comm[w];
                if (cw == c) {
                    next.self_loop[c] += wt / 2.0;  // each internal edge seen from both ends
                } else {
                    if (row[cw] == 0.0) cols.push_back(cw);
                    row[cw] += wt;
                }
            }
        }
        std::sort(cols.begin(), cols.end());
        for (std::uint32_t cw : cols) {
            next.adj[c].emplace_back(cw, row[cw]);
            row[cw] = 0.0;
        }
    }
    next.strength.assign(next.n, 0.0);
    for (std::uint32_t c = 0; c < next.n; ++c) {
        next.strength[c] = 2.0 * next.self_loop[c];
        for (auto& [w, wt] : next.adj[c]) next.strength[c] += wt;
        next.total_strength += next.strength[c];
    }
    return next;
}

}  // namespace detail

// Louvain: greedy local modularity moves (at the given resolution) followed by
// community contraction, repeated until no move improves modularity. Returns
// the flattened assignment of the original nodes.
inline Partition detect_multilevel(const Graph& g, const MultilevelParams& params) {
    const NodeId n = g.node_count();
    if (n == 0) return Partition();
    Rng rng(params.seed);
    detail::LevelGraph level = detail::level_from(g);

    // flat[v] = community of original node v in the current level's id space
    std::vector<std::uint32_t> flat(n);
    for (NodeId v = 0; v < n; ++v) flat[v] = v;

    std::vector<std::uint32_t> comm;
    while (true) {
        bool improved = detail::local_moves(level, params.resolution, rng, comm);
        if (!improved) break;
        // compact community ids for the next level
        std::vector<std::uint32_t> dense(level.n, UINT32_MAX);
        std::uint32_t next_id = 0;
        for (std::uint32_t v = 0; v < level.n; ++v)
            if (dense[comm[v]] == UINT32_MAX) dense[comm[v]] = next_id++;
        for (std::uint32_t v = 0; v < level.n; ++v) comm[v] = dense[comm[v]];
        for (NodeId v = 0; v < n; ++v) flat[v] = comm[flat[v]];
        if (next_id == level.n) break;  // nothing contracted
        level = detail::aggregate(level, comm, next_id);
    }
    return Partition(std::move(flat));
}

}  // namespace dyncomm
