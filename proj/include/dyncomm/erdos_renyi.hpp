#pragma once

#include <cstdint>

#include "dyncomm/error.hpp"
#include "dyncomm/graph.hpp"
#include "dyncomm/random.hpp"

namespace dyncomm {

// G(n,p): every one of the C(n,2) pairs is included independently with
// probability p. Pair order is fixed (lexicographic), so one seed pins the
// whole graph.
inline Graph erdos_renyi(NodeId n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw validation_error("erdos_renyi: p must be in [0,1]");
    Rng rng(seed);
    GraphBuilder b(n);
    for (NodeId u = 0; u + 1 < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (rng.uniform_double() < p) b.add_edge(u, v);
    return std::move(b).build();
}

}  // namespace dyncomm
