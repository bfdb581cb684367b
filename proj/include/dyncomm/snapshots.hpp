#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dyncomm/edge_list.hpp"
#include "dyncomm/error.hpp"
#include "dyncomm/graph.hpp"
#include "dyncomm/random.hpp"

namespace dyncomm {

enum class EdgeOrder { as_read, shuffled };

inline std::string_view to_string(EdgeOrder o) {
    return o == EdgeOrder::as_read ? "as-read" : "shuffled";
}

inline std::optional<EdgeOrder> edge_order_from_string(std::string_view s) {
    if (s == "as-read") return EdgeOrder::as_read;
    if (s == "shuffled") return EdgeOrder::shuffled;
    return std::nullopt;
}

// Ordered sequence of growing graphs; snapshot i's node and edge sets are
// subsets of snapshot i+1's.
struct SnapshotStream {
    std::vector<Graph> snapshots;

    std::size_t size() const { return snapshots.size(); }
    const Graph& operator[](std::size_t i) const { return snapshots[i]; }
    const Graph& last() const { return snapshots.back(); }
};

// Sequences the edges of g ("as-read" keeps construction order, "shuffled"
// permutes with the seed) and cuts k cumulative prefixes. All snapshots share
// g's node set; snapshot k-1 carries every edge of g.
inline SnapshotStream build_snapshots(const Graph& g, std::uint32_t k, EdgeOrder order,
                                      std::uint64_t seed) {
    if (k == 0) throw validation_error("build_snapshots: k must be >= 1");
    std::vector<Edge> edges = g.edges();
    if (order == EdgeOrder::shuffled) {
        Rng rng(seed);
        rng.shuffle(edges);
    }
    SnapshotStream stream;
    stream.snapshots.reserve(k);
    const std::uint64_t m = edges.size();
    for (std::uint32_t i = 0; i < k; ++i) {
        std::uint64_t take = (static_cast<std::uint64_t>(i) + 1) * m / k;
        GraphBuilder b(g.node_count());
        for (std::uint64_t e = 0; e < take; ++e) b.add_edge(edges[e].first, edges[e].second);
        stream.snapshots.push_back(std::move(b).build(g.original_ids()));
    }
    return stream;
}

// One edge-list file per snapshot, zero-padded index suffix. Returns the paths.
inline std::vector<std::string> write_snapshot_files(const SnapshotStream& stream,
                                                     const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> paths;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "snapshot_%03zu.txt", i);
        auto path = dir / name;
        std::ofstream out(path);
        if (!out) throw io_error("cannot write " + path.string());
        serialize_edge_list(out, stream[i]);
        paths.push_back(path.string());
    }
    return paths;
}

}  // namespace dyncomm
