#pragma once

#include <cstdint>
#include <vector>

#include "dyncomm/graph.hpp"

namespace dyncomm {

struct GraphStats {
    std::uint64_t nodes = 0;
    std::uint64_t edges = 0;
    std::uint64_t largest_cc_nodes = 0;
    std::uint64_t largest_cc_edges = 0;
    std::uint64_t triangles = 0;
    double avg_clustering = 0.0;  // nodes with degree < 2 contribute 0
};

// Exact triangle count per node via sorted-adjacency intersection; every
// triangle u<v<w is found once from its lowest edge.
inline std::vector<std::uint64_t> triangle_counts(const Graph& g) {
    std::vector<std::uint64_t> per_node(g.node_count(), 0);
    for (auto [u, v] : g.edges()) {
        auto nu = g.neighbors(u);
        auto nv = g.neighbors(v);
        auto iu = std::upper_bound(nu.begin(), nu.end(), v);
        auto iv = std::upper_bound(nv.begin(), nv.end(), v);
        while (iu != nu.end() && iv != nv.end()) {
            if (*iu < *iv) {
                ++iu;
            } else if (*iv < *iu) {
                ++iv;
            } else {
                ++per_node[u];
                ++per_node[v];
                ++per_node[*iu];
                ++iu;
                ++iv;
            }
        }
    }
    return per_node;
}

inline GraphStats compute_stats(const Graph& g) {
    GraphStats stats;
    stats.nodes = g.node_count();
    stats.edges = g.edge_count();
    if (g.node_count() == 0) return stats;

    // connected components by BFS
    const NodeId n = g.node_count();
    std::vector<std::uint32_t> comp(n, UINT32_MAX);
    std::vector<NodeId> queue;
    std::uint32_t comp_count = 0;
    for (NodeId s = 0; s < n; ++s) {
        if (comp[s] != UINT32_MAX) continue;
        comp[s] = comp_count;
        queue.assign(1, s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            NodeId v = queue[head];
            for (NodeId w : g.neighbors(v)) {
                if (comp[w] == UINT32_MAX) {
                    comp[w] = comp_count;
                    queue.push_back(w);
                }
            }
        }
        ++comp_count;
    }
    std::vector<std::uint64_t> comp_nodes(comp_count, 0), comp_edges(comp_count, 0);
    for (NodeId v = 0; v < n; ++v) ++comp_nodes[comp[v]];
    for (auto [u, v] : g.edges()) ++comp_edges[comp[u]];
    std::uint32_t largest = 0;
    for (std::uint32_t c = 1; c < comp_count; ++c)
        if (comp_nodes[c] > comp_nodes[largest]) largest = c;
    stats.largest_cc_nodes = comp_nodes[largest];
    stats.largest_cc_edges = comp_edges[largest];

    auto per_node = triangle_counts(g);
    double clustering_sum = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        stats.triangles += per_node[v];
        std::uint64_t d = g.degree(v);
        if (d >= 2)
            clustering_sum +=
                2.0 * static_cast<double>(per_node[v]) / (static_cast<double>(d) * static_cast<double>(d - 1));
    }
    stats.triangles /= 3;  // each triangle counted once per corner
    stats.avg_clustering = clustering_sum / static_cast<double>(n);
    return stats;
}

}  // namespace dyncomm
