#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <vector>

#include "dyncomm/graph.hpp"
#include "dyncomm/partition.hpp"

namespace dyncomm {

struct WalktrapParams {
    std::uint32_t walk_length = 4;  // t
};

namespace detail {

struct WalktrapMerge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;          // merged community ids (a < b); result id = n + index
    double delta_sigma = 0.0;     // Ward cost of the merge
    double q_after = 0.0;         // modularity of the partition after the merge
};

struct WalktrapDendrogram {
    std::vector<WalktrapMerge> merges;
    double q_singletons = 0.0;
    std::size_t best_level = 0;   // number of merges applied at the best-Q cut
};

struct WalktrapCommunity {
    bool alive = true;
    std::uint32_t size = 0;
    std::uint64_t internal_edges = 0;
    std::uint64_t degree_sum = 0;
    std::vector<double> profile;                 // averaged t-step transition row
    std::map<std::uint32_t, std::uint64_t> cross;  // adjacent community -> edge count
};

// Squared walk-distance between two communities:
//   r^2 = sum_k (P_ak - P_bk)^2 / d_k   (degree-0 columns carry no mass)
// and the Ward-style merge cost (1/n) * |a||b|/(|a|+|b|) * r^2.
inline double walk_delta_sigma(const WalktrapCommunity& a, const WalktrapCommunity& b,
                               const std::vector<std::uint32_t>& degree, std::uint32_t n) {
    double r2 = 0.0;
    for (std::uint32_t k = 0; k < n; ++k) {
        if (degree[k] == 0) continue;
        double d = a.profile[k] - b.profile[k];
        r2 += d * d / static_cast<double>(degree[k]);
    }
    double sa = a.size, sb = b.size;
    return sa * sb / (sa + sb) * r2 / static_cast<double>(n);
}

// Full agglomeration: start from singleton communities, repeatedly merge the
// adjacent pair with the smallest delta-sigma (ties to the smallest ids), and
// record modularity after every merge. Components never share a merge, so a
// component of s nodes contributes exactly s-1 merges.
inline WalktrapDendrogram walktrap_dendrogram(const Graph& g, const WalktrapParams& params) {
    WalktrapDendrogram out;
    const NodeId n = g.node_count();
    const double m = static_cast<double>(g.edge_count());
    if (n == 0 || g.edge_count() == 0) return out;

    std::vector<std::uint32_t> degree(n);
    for (NodeId v = 0; v < n; ++v) degree[v] = g.degree(v);

    // t-step transition rows, one random-walk source per node
    const std::uint32_t t = params.walk_length;
    std::vector<WalktrapCommunity> comms;
    comms.reserve(2 * static_cast<std::size_t>(n));
    {
        std::vector<double> x(n), y(n);
        for (NodeId v = 0; v < n; ++v) {
            std::fill(x.begin(), x.end(), 0.0);
            x[v] = 1.0;
            for (std::uint32_t step = 0; step < t; ++step) {
                std::fill(y.begin(), y.end(), 0.0);
                for (NodeId i = 0; i < n; ++i) {
                    if (x[i] == 0.0) continue;
                    auto nb = g.neighbors(i);
                    if (nb.empty()) {
                        y[i] += x[i];
                        continue;
                    }
                    double share = x[i] / static_cast<double>(nb.size());
                    for (NodeId w : nb) y[w] += share;
                }
                x.swap(y);
            }
            WalktrapCommunity c;
            c.size = 1;
            c.degree_sum = degree[v];
            c.profile = x;
            comms.push_back(std::move(c));
        }
    }
    for (auto [u, v] : g.edges()) {
        ++comms[u].cross[v];
        ++comms[v].cross[u];
    }

    struct Cand {
        double dsigma;
        std::uint32_t a, b;
    };
    auto later = [](const Cand& l, const Cand& r) {
        if (l.dsigma != r.dsigma) return l.dsigma > r.dsigma;
        if (l.a != r.a) return l.a > r.a;
        return l.b > r.b;
    };
    std::priority_queue<Cand, std::vector<Cand>, decltype(later)> heap(later);
    for (std::uint32_t a = 0; a < n; ++a)
        for (const auto& [b, cnt] : comms[a].cross)
            if (b > a) heap.push({walk_delta_sigma(comms[a], comms[b], degree, n), a, b});

    auto q_term = [&](const WalktrapCommunity& c) {
        double frac = static_cast<double>(c.degree_sum) / (2.0 * m);
        return static_cast<double>(c.internal_edges) / m - frac * frac;
    };
    double q = 0.0;
    for (NodeId v = 0; v < n; ++v) q += q_term(comms[v]);
    out.q_singletons = q;
    double best_q = q;

    while (!heap.empty()) {
        Cand cand = heap.top();
        heap.pop();
        if (!comms[cand.a].alive || !comms[cand.b].alive) continue;
        WalktrapCommunity& a = comms[cand.a];
        WalktrapCommunity& b = comms[cand.b];

        WalktrapCommunity merged;
        merged.size = a.size + b.size;
        merged.internal_edges = a.internal_edges + b.internal_edges + a.cross.at(cand.b);
        merged.degree_sum = a.degree_sum + b.degree_sum;
        merged.profile.resize(n);
        const double wa = static_cast<double>(a.size) / merged.size;
        const double wb = static_cast<double>(b.size) / merged.size;
        for (NodeId k = 0; k < n; ++k)
            merged.profile[k] = wa * a.profile[k] + wb * b.profile[k];
        for (const auto& [d, cnt] : a.cross)
            if (d != cand.b) merged.cross[d] += cnt;
        for (const auto& [d, cnt] : b.cross)
            if (d != cand.a) merged.cross[d] += cnt;

        q += q_term(merged) - q_term(a) - q_term(b);
        a.alive = b.alive = false;
        a.profile = std::vector<double>();
        b.profile = std::vector<double>();

        const std::uint32_t id = static_cast<std::uint32_t>(comms.size());
        for (const auto& [d, cnt] : merged.cross) {
            comms[d].cross.erase(cand.a);
            comms[d].cross.erase(cand.b);
            comms[d].cross[id] = cnt;
        }
        comms.push_back(std::move(merged));
        out.merges.push_back({cand.a, cand.b, cand.dsigma, q});
        if (q > best_q) {
            best_q = q;
            out.best_level = out.merges.size();
        }
        for (const auto& [d, cnt] : comms[id].cross)
            heap.push({walk_delta_sigma(comms[id], comms[d], degree, n),
                       std::min(d, id), std::max(d, id)});
    }
    return out;
}

// Partition after applying the first `level` merges of the dendrogram.
inline Partition cut_dendrogram(const Graph& g, const WalktrapDendrogram& dendrogram,
                                std::size_t level) {
    const NodeId n = g.node_count();
    std::vector<std::uint32_t> parent(n + dendrogram.merges.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < level; ++i) {
        parent[dendrogram.merges[i].a] = static_cast<std::uint32_t>(n + i);
        parent[dendrogram.merges[i].b] = static_cast<std::uint32_t>(n + i);
    }
    std::vector<std::uint32_t> assignment(n);
    for (NodeId v = 0; v < n; ++v) {
        std::uint32_t c = v;
        while (parent[c] != c) c = parent[c];
        assignment[v] = c;
    }
    return Partition(std::move(assignment));
}

}  // namespace detail

// Random-walk agglomeration: t-step transition profiles define a walk distance
// between communities; adjacent pairs merge in Ward order and the dendrogram
// is cut at the modularity-maximizing level. Disconnected graphs agglomerate
// per component.
inline Partition detect_walktrap(const Graph& g, const WalktrapParams& params) {
    const NodeId n = g.node_count();
    if (n == 0) return Partition();
    if (g.edge_count() == 0) return Partition::singletons(n);
    auto dendrogram = detail::walktrap_dendrogram(g, params);
    return detail::cut_dendrogram(g, dendrogram, dendrogram.best_level);
}

}  // namespace dyncomm
