#pragma once

// Shared fixtures and independent oracles for the test suites. The metric
// oracles here deliberately recompute everything from first principles
// (pairwise sums, literal set counting) so they stay independent of the
// library's tally-based implementations.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "dyncomm/graph.hpp"
#include "dyncomm/partition.hpp"

namespace testutil {

using dyncomm::Graph;
using dyncomm::GraphBuilder;
using dyncomm::NodeId;
using dyncomm::Partition;

inline Graph make_graph(NodeId n, std::initializer_list<std::pair<NodeId, NodeId>> edges) {
    GraphBuilder b(n);
    for (auto [u, v] : edges) b.add_edge(u, v);
    return std::move(b).build();
}

inline Graph triangle() { return make_graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

inline Graph path3() { return make_graph(3, {{0, 1}, {1, 2}}); }

inline Graph two_triangles() {
    return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

inline Graph complete(NodeId n) {
    GraphBuilder b(n);
    for (NodeId u = 0; u + 1 < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) b.add_edge(u, v);
    return std::move(b).build();
}

// k cliques of size s, consecutive cliques joined in a cycle by one edge
// (node 0 of each clique to node 1 of the next).
inline Graph ring_of_cliques(NodeId k, NodeId s) {
    GraphBuilder b(k * s);
    for (NodeId c = 0; c < k; ++c) {
        NodeId base = c * s;
        for (NodeId u = 0; u + 1 < s; ++u)
            for (NodeId v = u + 1; v < s; ++v) b.add_edge(base + u, base + v);
        NodeId next = ((c + 1) % k) * s;
        b.add_edge(base, next + 1);
    }
    return std::move(b).build();
}

inline Partition clique_partition(NodeId k, NodeId s) {
    std::vector<std::uint32_t> a(k * s);
    for (NodeId v = 0; v < k * s; ++v) a[v] = v / s;
    return Partition(std::move(a));
}

// Pairwise-delta definition of modularity:
//   Q = (1/2m) sum_{u,v} [A_uv - d_u d_v / (2m)] delta(c_u, c_v)
// An independent route to the per-community sum used by the library.
inline double pairwise_modularity(const Graph& g, const Partition& p) {
    const double m = static_cast<double>(g.edge_count());
    if (m == 0.0) return 0.0;
    const NodeId n = g.node_count();
    double q = 0.0;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = 0; v < n; ++v) {
            if (p[u] != p[v]) continue;
            double a_uv = (u != v && g.has_edge(u, v)) ? 1.0 : 0.0;
            q += a_uv - static_cast<double>(g.degree(u)) * g.degree(v) / (2.0 * m);
        }
    }
    return q / (2.0 * m);
}

// Literal evaluation of the density-weighted metric, recounting each
// community's node and edge sets from the adjacency.
inline double literal_modularity_density(const Graph& g, const Partition& p) {
    const double m = static_cast<double>(g.edge_count());
    if (m == 0.0) return 0.0;
    const std::uint32_t c = p.community_count();
    double q = 0.0;
    for (std::uint32_t ci = 0; ci < c; ++ci) {
        double nc = 0.0, mc = 0.0, ec = 0.0;
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (p[v] == ci) nc += 1.0;
        for (auto [u, v] : g.edges()) {
            if (p[u] == ci && p[v] == ci) mc += 1.0;
            else if (p[u] == ci || p[v] == ci) ec += 1.0;
        }
        double pc = nc > 1.0 ? 2.0 * mc / (nc * (nc - 1.0)) : 0.0;
        double inner = (2.0 * mc + ec) / (2.0 * m) * pc;
        q += mc / m * pc - inner * inner;
        for (std::uint32_t cj = 0; cj < c; ++cj) {
            if (cj == ci) continue;
            double mcc = 0.0, ncj = 0.0;
            for (auto [u, v] : g.edges())
                if ((p[u] == ci && p[v] == cj) || (p[u] == cj && p[v] == ci)) mcc += 1.0;
            for (NodeId v = 0; v < g.node_count(); ++v)
                if (p[v] == cj) ncj += 1.0;
            if (mcc > 0.0) q -= mcc / (2.0 * m) * (mcc / (nc * ncj));
        }
    }
    return q;
}

// O(n^3) all-triples triangle count.
inline std::uint64_t brute_triangles(const Graph& g) {
    const NodeId n = g.node_count();
    std::uint64_t t = 0;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            for (NodeId w = v + 1; w < n; ++w)
                if (g.has_edge(u, v) && g.has_edge(v, w) && g.has_edge(u, w)) ++t;
    return t;
}

inline bool is_connected(const Graph& g) {
    const NodeId n = g.node_count();
    if (n == 0) return true;
    std::vector<bool> seen(n, false);
    std::vector<NodeId> stack{0};
    seen[0] = true;
    NodeId count = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : g.neighbors(v))
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
    }
    return count == n;
}

// ---- small statistics toolbox (series/continued-fraction forms) ----

inline double gamma_p(double a, double x) {  // regularized lower incomplete gamma
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) {
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    // continued fraction for the upper tail
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    double upper = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    return 1.0 - upper;
}

inline double chi2_sf(double x, double dof) { return 1.0 - gamma_p(dof / 2.0, x / 2.0); }

inline double betacf(double a, double b, double x) {
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < 1e-300) d = 1e-300;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = 1.0 + aa / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = 1.0 + aa / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return h;
}

inline double ibeta(double a, double b, double x) {  // regularized incomplete beta
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log(1.0 - x));
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

// one-sided upper-tail p-value of Student's t
inline double t_sf(double t, double dof) {
    double p = ibeta(dof / 2.0, 0.5, dof / (dof + t * t)) / 2.0;
    return t >= 0.0 ? p : 1.0 - p;
}

inline double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// Mann-Kendall no-trend test, two-sided p-value (normal approximation, no
// tie correction beyond the sign statistic).
inline double mann_kendall_p(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    long long s = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (xs[j] > xs[i]) ++s;
            else if (xs[j] < xs[i]) --s;
        }
    double var = n * (n - 1.0) * (2.0 * n + 5.0) / 18.0;
    if (var <= 0.0) return 1.0;
    double z;
    if (s > 0) z = (s - 1.0) / std::sqrt(var);
    else if (s < 0) z = (s + 1.0) / std::sqrt(var);
    else z = 0.0;
    return 2.0 * normal_sf(std::abs(z));
}

// one-sided paired t-test that mean(a - b) > 0; returns the p-value
inline double paired_t_p(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = a[i] - b[i] - mean;
        var += d * d;
    }
    var /= static_cast<double>(n - 1);
    if (var == 0.0) return mean > 0.0 ? 0.0 : 1.0;
    double t = mean / std::sqrt(var / static_cast<double>(n));
    return t_sf(t, static_cast<double>(n - 1));
}

}  // namespace testutil
