#pragma once

#include <cstdint>
#include <vector>

#include "dyncomm/graph.hpp"
#include "dyncomm/partition.hpp"
#include "dyncomm/random.hpp"

namespace dyncomm {

struct LabelPropagationParams {
    std::uint32_t max_sweeps = 100;
    std::uint64_t seed = 0;
};

// Asynchronous label propagation: every node starts with its own label, then
// sweeps in seeded-random order adopt the most frequent neighbor label, ties
// drawn uniformly with the same generator. Stops when a sweep changes nothing
// or after max_sweeps. Isolated nodes keep their own label.
inline Partition detect_label_propagation(const Graph& g, const LabelPropagationParams& params) {
    const NodeId n = g.node_count();
    if (n == 0) return Partition();
    std::vector<std::uint32_t> label(n);
    for (NodeId v = 0; v < n; ++v) label[v] = v;

    Rng rng(params.seed);
    std::vector<NodeId> order(n);
    for (NodeId v = 0; v < n; ++v) order[v] = v;

    std::vector<std::uint32_t> count(n, 0);
    std::vector<std::uint32_t> touched;
    std::vector<std::uint32_t> ties;
    for (std::uint32_t sweep = 0; sweep < params.max_sweeps; ++sweep) {
        rng.shuffle(order);
        bool changed = false;
        for (NodeId v : order) {
            auto nb = g.neighbors(v);
            if (nb.empty()) continue;
            touched.clear();
            std::uint32_t best_count = 0;
            for (NodeId w : nb) {
                std::uint32_t l = label[w];
                if (count[l]++ == 0) touched.push_back(l);
                best_count = std::max(best_count, count[l]);
            }
            ties.clear();
            for (std::uint32_t l : touched)
                if (count[l] == best_count) ties.push_back(l);
            std::uint32_t pick =
                ties.size() == 1 ? ties[0] : ties[rng.uniform_int(ties.size())];
            for (std::uint32_t l : touched) count[l] = 0;
            if (pick != label[v]) {
                label[v] = pick;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return Partition(std::move(label));
}

}  // namespace dyncomm
