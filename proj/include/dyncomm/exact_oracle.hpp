#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dyncomm/error.hpp"
#include "dyncomm/graph.hpp"
#include "dyncomm/partition.hpp"
#include "dyncomm/scoring.hpp"

namespace dyncomm {

namespace detail {

// Advances a restricted growth string (a[0]=0, a[i] <= max(a[0..i-1])+1) to
// its lexicographic successor. b[i] = max(a[0..i-1]). Returns false when the
// enumeration is exhausted.
inline bool next_rgs(std::vector<std::uint32_t>& a, std::vector<std::uint32_t>& b) {
    const std::size_t n = a.size();
    std::size_t i = n;
    while (--i >= 1) {
        if (a[i] <= b[i]) break;  // incrementable
        if (i == 1) return false;
    }
    if (i == 0) return false;
    ++a[i];
    if (i + 1 < n) {
        b[i + 1] = std::max(b[i], a[i]);
        for (std::size_t j = i + 2; j < n; ++j) b[j] = b[i + 1];
    }
    for (std::size_t j = i + 1; j < n; ++j) a[j] = 0;
    return true;
}

}  // namespace detail

// Exhaustive search over all set partitions, enumerated as restricted growth
// strings in lexicographic order. Bell(12) ~ 4.2M keeps this usable as an
// oracle; larger graphs are refused. Only strict improvements replace the
// incumbent, so ties resolve to the lexicographically smallest assignment.
inline std::pair<Partition, double> exact_best_partition(const Graph& g, Metric metric) {
    const NodeId n = g.node_count();
    if (n > 12)
        throw validation_error("exact_best_partition: refusing graphs with more than 12 nodes");
    if (n == 0) return {Partition(), 0.0};

    std::vector<std::uint32_t> a(n, 0), b(n, 0);
    Partition best{std::vector<std::uint32_t>(a)};
    double best_score = score(g, best, metric);
    while (detail::next_rgs(a, b)) {
        Partition candidate{std::vector<std::uint32_t>(a)};
        double s = score(g, candidate, metric);
        if (s > best_score) {
            best_score = s;
            best = std::move(candidate);
        }
    }
    return {std::move(best), best_score};
}

}  // namespace dyncomm
