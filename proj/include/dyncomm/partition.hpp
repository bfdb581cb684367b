#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "dyncomm/edge_list.hpp"
#include "dyncomm/error.hpp"
#include "dyncomm/graph.hpp"

namespace dyncomm {

// Total, disjoint assignment node -> community. Community ids are always
// dense 0..c-1, relabeled in order of first appearance by node id, so two
// partitions of the same grouping compare equal.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<std::uint32_t> assignment) : comm_(std::move(assignment)) {
        normalize();
    }

    static Partition singletons(NodeId n) {
        std::vector<std::uint32_t> a(n);
        for (NodeId v = 0; v < n; ++v) a[v] = v;
        Partition p;
        p.comm_ = std::move(a);
        p.count_ = n;
        return p;
    }

    static Partition one_community(NodeId n) {
        Partition p;
        p.comm_.assign(n, 0);
        p.count_ = n > 0 ? 1 : 0;
        return p;
    }

    std::uint32_t operator[](NodeId v) const { return comm_[v]; }
    NodeId size() const { return static_cast<NodeId>(comm_.size()); }
    std::uint32_t community_count() const { return count_; }
    const std::vector<std::uint32_t>& assignment() const { return comm_; }

    std::vector<std::vector<NodeId>> groups() const {
        std::vector<std::vector<NodeId>> out(count_);
        for (NodeId v = 0; v < size(); ++v) out[comm_[v]].push_back(v);
        return out;
    }

    bool operator==(const Partition&) const = default;

private:
    void normalize() {
        std::unordered_map<std::uint32_t, std::uint32_t> remap;
        std::uint32_t next = 0;
        for (auto& c : comm_) {
            auto [it, inserted] = remap.emplace(c, next);
            if (inserted) ++next;
            c = it->second;
        }
        count_ = next;
    }

    std::vector<std::uint32_t> comm_;
    std::uint32_t count_ = 0;
};

// Text format: one line per node, "original_node_id<TAB>community_id".
inline void write_partition(std::ostream& out, const Graph& g, const Partition& p) {
    if (p.size() != g.node_count()) throw internal_error("write_partition: size mismatch");
    for (NodeId v = 0; v < g.node_count(); ++v)
        out << g.original_id(v) << '\t' << p[v] << '\n';
}

inline Partition read_partition(std::istream& in, const Graph& g) {
    std::unordered_map<std::uint64_t, NodeId> by_original;
    for (NodeId v = 0; v < g.node_count(); ++v) by_original[g.original_id(v)] = v;
    std::vector<std::uint32_t> assignment(g.node_count(), UINT32_MAX);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        auto toks = detail::tokens_of(sv);
        if (toks.size() != 2) throw parse_error(line_no, "expected \"node<TAB>community\"");
        auto it = by_original.find(detail::parse_node_id(toks[0], line_no));
        if (it == by_original.end()) throw parse_error(line_no, "unknown node id");
        assignment[it->second] = static_cast<std::uint32_t>(detail::parse_node_id(toks[1], line_no));
    }
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (assignment[v] == UINT32_MAX)
            throw io_error("partition file does not cover node " + std::to_string(g.original_id(v)));
    return Partition(std::move(assignment));
}

}  // namespace dyncomm
