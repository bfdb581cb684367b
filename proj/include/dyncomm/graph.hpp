#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dyncomm/error.hpp"

namespace dyncomm {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;  // stored with first < second

// Immutable undirected simple graph. Node ids are dense 0..n-1; the ids of an
// input file are kept in a side table for output. Edge order is preserved from
// construction, which is what cumulative snapshot prefixes slice on.
class Graph {
public:
    Graph() = default;

    NodeId node_count() const { return n_; }
    std::uint64_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }

    std::uint32_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

    bool has_edge(NodeId u, NodeId v) const {
        if (degree(u) > degree(v)) std::swap(u, v);
        auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    std::uint64_t original_id(NodeId v) const {
        return original_ids_.empty() ? v : original_ids_[v];
    }

    const std::vector<std::uint64_t>& original_ids() const { return original_ids_; }

private:
    friend class GraphBuilder;
    NodeId n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> offsets_{0};  // CSR adjacency, sorted per node
    std::vector<NodeId> adj_;
    std::vector<std::uint64_t> original_ids_;
};

// Collects edges, drops self-loops, merges duplicates (either orientation),
// keeps first-occurrence order.
class GraphBuilder {
public:
    GraphBuilder() = default;
    explicit GraphBuilder(NodeId node_count) : n_(node_count) {}

    void require_node_count(NodeId n) { n_ = std::max(n_, n); }

    // Returns true if the edge was new.
    bool add_edge(NodeId u, NodeId v) {
        if (u == v) return false;
        if (u > v) std::swap(u, v);
        require_node_count(v + 1);
        std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
        if (!seen_.insert(key).second) return false;
        edges_.emplace_back(u, v);
        return true;
    }

    Graph build(std::vector<std::uint64_t> original_ids = {}) && {
        if (!original_ids.empty() && original_ids.size() != n_)
            throw internal_error("GraphBuilder: original id table size mismatch");
        Graph g;
        g.n_ = n_;
        g.edges_ = std::move(edges_);
        g.original_ids_ = std::move(original_ids);
        g.offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
        for (auto [u, v] : g.edges_) {
            ++g.offsets_[u + 1];
            ++g.offsets_[v + 1];
        }
        for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
        g.adj_.resize(2 * g.edges_.size());
        std::vector<std::uint32_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
        for (auto [u, v] : g.edges_) {
            g.adj_[cursor[u]++] = v;
            g.adj_[cursor[v]++] = u;
        }
        for (NodeId v = 0; v < n_; ++v)
            std::sort(g.adj_.begin() + g.offsets_[v], g.adj_.begin() + g.offsets_[v + 1]);
        return g;
    }

private:
    NodeId n_ = 0;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> seen_;
};

// Subgraph induced by dense ids 0..node_count-1, edge order preserved.
inline Graph induced_prefix(const Graph& g, NodeId node_count) {
    node_count = std::min(node_count, g.node_count());
    GraphBuilder b(node_count);
    for (auto [u, v] : g.edges())
        if (u < node_count && v < node_count) b.add_edge(u, v);
    std::vector<std::uint64_t> ids;
    if (!g.original_ids().empty())
        ids.assign(g.original_ids().begin(), g.original_ids().begin() + node_count);
    return std::move(b).build(std::move(ids));
}

}  // namespace dyncomm
