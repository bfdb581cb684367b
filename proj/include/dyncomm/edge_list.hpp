#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dyncomm/graph.hpp"
#include "dyncomm/util.hpp"

namespace dyncomm {

struct LoadResult {
    Graph graph;
    std::uint64_t raw_arc_count = 0;  // data lines as they appear, before symmetrization
};

namespace detail {

inline bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// Splits a line into whitespace-separated tokens.
inline std::vector<std::string_view> tokens_of(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_ws(line[i])) ++i;
        std::size_t start = i;
        while (i < line.size() && !is_ws(line[i])) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

inline std::uint64_t parse_node_id(std::string_view tok, std::size_t line_no) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw parse_error(line_no, "expected integer node id, got \"" + std::string(tok) + "\"");
    return value;
}

}  // namespace detail

// SNAP edge-list format: UTF-8 text, '#'-prefixed comment lines, data lines
// "FromNodeId <tab or spaces> ToNodeId". Self-loops are dropped, reciprocal
// arcs merge into one undirected edge, and node ids are remapped to dense
// 0..n-1 in first-appearance order (the file ids stay available through
// Graph::original_id).
inline LoadResult load_edge_list(std::istream& in) {
    LoadResult result;
    GraphBuilder builder;
    std::unordered_map<std::uint64_t, NodeId> id_map;
    std::vector<std::uint64_t> original_ids;
    auto dense = [&](std::uint64_t orig) {
        auto [it, inserted] = id_map.emplace(orig, static_cast<NodeId>(original_ids.size()));
        if (inserted) original_ids.push_back(orig);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        auto toks = detail::tokens_of(sv);
        if (toks.size() != 2)
            throw parse_error(line_no, "expected two node ids, got " + std::to_string(toks.size()) + " tokens");
        NodeId u = dense(detail::parse_node_id(toks[0], line_no));
        NodeId v = dense(detail::parse_node_id(toks[1], line_no));
        ++result.raw_arc_count;
        builder.add_edge(u, v);
    }
    builder.require_node_count(static_cast<NodeId>(original_ids.size()));
    result.graph = std::move(builder).build(std::move(original_ids));
    return result;
}

// Writes the same edge-list format, one edge per line using original ids.
// Isolated nodes are not representable in two-column form; the node count in
// the comment header is informational only.
inline void serialize_edge_list(std::ostream& out, const Graph& g) {
    out << "# Undirected edge list: " << g.node_count() << " nodes, " << g.edge_count()
        << " edges\n";
    for (auto [u, v] : g.edges()) out << g.original_id(u) << '\t' << g.original_id(v) << '\n';
}

}  // namespace dyncomm
