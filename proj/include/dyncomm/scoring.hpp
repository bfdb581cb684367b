#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "dyncomm/error.hpp"
#include "dyncomm/graph.hpp"
#include "dyncomm/partition.hpp"

namespace dyncomm {

enum class Metric { modularity, modularity_density };

inline std::string_view to_string(Metric m) {
    return m == Metric::modularity ? "q" : "qds";
}

inline std::optional<Metric> metric_from_string(std::string_view s) {
    if (s == "q") return Metric::modularity;
    if (s == "qds") return Metric::modularity_density;
    return std::nullopt;
}

// Per-community edge bookkeeping: m_c internal edges, e_c external edge
// endpoints, n_c nodes, and m_cc' cross-community edge counts.
struct CommunityTally {
    std::uint64_t total_edges = 0;
    std::vector<std::uint64_t> internal_edges;
    std::vector<std::uint64_t> external_edges;
    std::vector<std::uint32_t> community_sizes;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> cross_edges;  // key c < c'
};

inline CommunityTally tally(const Graph& g, const Partition& p) {
    if (p.size() != g.node_count())
        throw internal_error("tally: partition does not cover the graph's nodes");
    CommunityTally t;
    t.total_edges = g.edge_count();
    const std::uint32_t c = p.community_count();
    t.internal_edges.assign(c, 0);
    t.external_edges.assign(c, 0);
    t.community_sizes.assign(c, 0);
    for (NodeId v = 0; v < g.node_count(); ++v) ++t.community_sizes[p[v]];
    for (auto [u, v] : g.edges()) {
        std::uint32_t cu = p[u], cv = p[v];
        if (cu == cv) {
            ++t.internal_edges[cu];
        } else {
            ++t.external_edges[cu];
            ++t.external_edges[cv];
            ++t.cross_edges[{std::min(cu, cv), std::max(cu, cv)}];
        }
    }
    return t;
}

// Q = sum_c [ m_c/m - ((2 m_c + e_c) / (2m))^2 ]. Edge-free graphs score 0.
inline double modularity_from_tally(const CommunityTally& t) {
    if (t.total_edges == 0) return 0.0;
    const double m = static_cast<double>(t.total_edges);
    double q = 0.0;
    for (std::size_t c = 0; c < t.internal_edges.size(); ++c) {
        double mc = static_cast<double>(t.internal_edges[c]);
        double tot = 2.0 * mc + static_cast<double>(t.external_edges[c]);
        double frac = tot / (2.0 * m);
        q += mc / m - frac * frac;
    }
    return q;
}

inline double modularity(const Graph& g, const Partition& p) {
    return modularity_from_tally(tally(g, p));
}

// Q_ds = sum_c [ (m_c/m) p_c - ((2 m_c + e_c)/(2m) p_c)^2
//                - sum_{c' != c} (m_cc'/(2m)) p_cc' ]
// with p_c = 2 m_c / (n_c (n_c - 1)), taken as 0 for communities of size <= 1,
// and p_cc' = m_cc' / (n_c n_c').
inline double modularity_density_from_tally(const CommunityTally& t) {
    if (t.total_edges == 0) return 0.0;
    const double m = static_cast<double>(t.total_edges);
    double q = 0.0;
    for (std::size_t c = 0; c < t.internal_edges.size(); ++c) {
        double nc = static_cast<double>(t.community_sizes[c]);
        double mc = static_cast<double>(t.internal_edges[c]);
        double pc = nc > 1.0 ? 2.0 * mc / (nc * (nc - 1.0)) : 0.0;
        double tot = 2.0 * mc + static_cast<double>(t.external_edges[c]);
        double inner = tot / (2.0 * m) * pc;
        q += mc / m * pc - inner * inner;
    }
    // each unordered cross pair appears in both communities' sums
    for (const auto& [pair, count] : t.cross_edges) {
        double mcc = static_cast<double>(count);
        double pcc = mcc / (static_cast<double>(t.community_sizes[pair.first]) *
                            static_cast<double>(t.community_sizes[pair.second]));
        q -= 2.0 * (mcc / (2.0 * m)) * pcc;
    }
    return q;
}

inline double modularity_density(const Graph& g, const Partition& p) {
    return modularity_density_from_tally(tally(g, p));
}

inline double score(const Graph& g, const Partition& p, Metric metric) {
    auto t = tally(g, p);
    return metric == Metric::modularity ? modularity_from_tally(t)
                                        : modularity_density_from_tally(t);
}

}  // namespace dyncomm
