#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "dyncomm/graph.hpp"
#include "dyncomm/partition.hpp"
#include "dyncomm/random.hpp"
#include "dyncomm/scoring.hpp"

namespace dyncomm {

struct LeadingEigenvectorParams {
    std::uint32_t max_splits = 0;      // 0 = unbounded
    double power_tol = 1e-10;
    std::uint32_t power_max_iter = 0;  // 0 = 10 * graph node count
};

namespace detail {

// Modularity matrix restricted to a node group, with the row-sum correction
// that keeps within-group splits consistent:
//   B_ij = A_ij - d_i d_j / (2m) - delta_ij (k_i^S - d_i D_S / (2m))
// Degrees are taken from the full graph. Applied matrix-free.
class GroupModularityOp {
public:
    GroupModularityOp(const Graph& g, std::vector<NodeId> members)
        : graph_(g), members_(std::move(members)), local_(g.node_count(), UINT32_MAX) {
        const double two_m = 2.0 * static_cast<double>(g.edge_count());
        two_m_ = two_m;
        const std::size_t s = members_.size();
        for (std::size_t i = 0; i < s; ++i) local_[members_[i]] = static_cast<std::uint32_t>(i);
        deg_.resize(s);
        deg_sum_ = 0.0;
        for (std::size_t i = 0; i < s; ++i) {
            deg_[i] = static_cast<double>(graph_.degree(members_[i]));
            deg_sum_ += deg_[i];
        }
        diag_.resize(s);
        nb_deg_sum_.assign(s, 0.0);
        in_group_deg_.assign(s, 0.0);
        for (std::size_t i = 0; i < s; ++i) {
            for (NodeId w : graph_.neighbors(members_[i])) {
                if (local_[w] == UINT32_MAX) continue;
                in_group_deg_[i] += 1.0;
                nb_deg_sum_[i] += static_cast<double>(graph_.degree(w));
            }
            diag_[i] = in_group_deg_[i] - deg_[i] * deg_sum_ / two_m_;
        }
    }

    std::size_t dimension() const { return members_.size(); }
    const std::vector<NodeId>& members() const { return members_; }

    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        const std::size_t s = members_.size();
        double weighted = 0.0;
        for (std::size_t i = 0; i < s; ++i) weighted += deg_[i] * x[i];
        for (std::size_t i = 0; i < s; ++i) {
            double acc = 0.0;
            for (NodeId w : graph_.neighbors(members_[i])) {
                std::uint32_t j = local_[w];
                if (j != UINT32_MAX) acc += x[j];
            }
            y[i] = acc - deg_[i] * weighted / two_m_ - diag_[i] * x[i];
        }
    }

    // max_i sum_j |B_ij|; shifting by this bound makes every eigenvalue of
    // B + sigma I non-negative, so power iteration finds the algebraic maximum.
    double inf_norm_bound() const {
        const std::size_t s = members_.size();
        double bound = 0.0;
        for (std::size_t i = 0; i < s; ++i) {
            double row = 0.0;
            for (NodeId w : graph_.neighbors(members_[i])) {
                std::uint32_t j = local_[w];
                if (j != UINT32_MAX && j != i)
                    row += std::abs(1.0 - deg_[i] * deg_[j] / two_m_);
            }
            row += deg_[i] * (deg_sum_ - deg_[i] - nb_deg_sum_[i]) / two_m_;
            row += std::abs(-deg_[i] * deg_[i] / two_m_ - diag_[i]);
            bound = std::max(bound, row);
        }
        return bound;
    }

private:
    const Graph& graph_;
    std::vector<NodeId> members_;
    std::vector<std::uint32_t> local_;
    std::vector<double> deg_;
    std::vector<double> diag_;
    std::vector<double> nb_deg_sum_;
    std::vector<double> in_group_deg_;
    double deg_sum_ = 0.0;
    double two_m_ = 0.0;
};

struct PowerResult {
    std::vector<double> vector;
    double eigenvalue = 0.0;  // of B (shift removed)
    double residual = 0.0;    // ||B x - lambda x||, with ||x|| = 1
    bool converged = false;
    std::uint32_t iterations = 0;
};

// Power iteration on B + sigma I from a seeded start vector. The residual is
// shift-invariant, so convergence is checked against B directly.
inline PowerResult power_leading(const GroupModularityOp& op, double tol,
                                 std::uint32_t max_iter, std::uint64_t seed) {
    const std::size_t s = op.dimension();
    PowerResult result;
    result.vector.resize(s);
    Rng rng(seed);
    for (auto& x : result.vector) x = rng.uniform_double() - 0.5;
    double norm = 0.0;
    for (double x : result.vector) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return result;
    for (auto& x : result.vector) x /= norm;

    const double sigma = op.inf_norm_bound();
    std::vector<double> y(s);
    for (std::uint32_t iter = 0; iter < max_iter; ++iter) {
        op.apply(result.vector, y);
        for (std::size_t i = 0; i < s; ++i) y[i] += sigma * result.vector[i];
        double rayleigh = 0.0;
        for (std::size_t i = 0; i < s; ++i) rayleigh += result.vector[i] * y[i];
        double resid = 0.0;
        for (std::size_t i = 0; i < s; ++i) {
            double r = y[i] - rayleigh * result.vector[i];
            resid += r * r;
        }
        resid = std::sqrt(resid);
        result.eigenvalue = rayleigh - sigma;
        result.residual = resid;
        result.iterations = iter + 1;
        if (resid <= tol) {
            result.converged = true;
            return result;
        }
        double ynorm = 0.0;
        for (double v : y) ynorm += v * v;
        ynorm = std::sqrt(ynorm);
        if (ynorm == 0.0) return result;  // group is degenerate; treat as indivisible
        for (std::size_t i = 0; i < s; ++i) result.vector[i] = y[i] / ynorm;
    }
    return result;
}

}  // namespace detail

// Newman's recursive spectral bisection: split each group by the sign of the
// leading eigenvector of its restricted modularity matrix; reject splits that
// do not increase Q or whose leading eigenvalue is not positive ("indivisible"),
// and stop after max_splits accepted splits when bounded.
inline Partition detect_leading_eigenvector(const Graph& g,
                                            const LeadingEigenvectorParams& params) {
    const NodeId n = g.node_count();
    if (n == 0) return Partition();
    if (g.edge_count() == 0) return Partition::one_community(n);

    std::vector<std::uint32_t> comm(n, 0);
    double q_current = modularity(g, Partition{std::vector<std::uint32_t>(comm)});
    const std::uint32_t max_iter =
        params.power_max_iter != 0 ? params.power_max_iter : 10 * n;

    std::deque<std::vector<NodeId>> work;
    {
        std::vector<NodeId> all(n);
        for (NodeId v = 0; v < n; ++v) all[v] = v;
        work.push_back(std::move(all));
    }
    std::uint32_t next_id = 1;
    std::uint32_t splits = 0;
    std::uint64_t group_seq = 0;

    while (!work.empty()) {
        std::vector<NodeId> group = std::move(work.front());
        work.pop_front();
        if (group.size() < 2) continue;
        if (params.max_splits != 0 && splits >= params.max_splits) continue;

        detail::GroupModularityOp op(g, std::move(group));
        auto power = detail::power_leading(op, params.power_tol, max_iter,
                                           derive_seed(0x6c65, seed_stream::detector, group_seq++));
        if (!power.converged || power.eigenvalue <= 1e-12) continue;

        std::vector<NodeId> positive, negative;
        for (std::size_t i = 0; i < op.dimension(); ++i) {
            if (power.vector[i] >= 0.0)
                positive.push_back(op.members()[i]);
            else
                negative.push_back(op.members()[i]);
        }
        if (positive.empty() || negative.empty()) continue;

        const std::uint32_t old_id = comm[op.members().front()];
        for (NodeId v : negative) comm[v] = next_id;
        double q_candidate = modularity(g, Partition{std::vector<std::uint32_t>(comm)});
        if (q_candidate > q_current) {
            q_current = q_candidate;
            ++next_id;
            ++splits;
            work.push_back(std::move(positive));
            work.push_back(std::move(negative));
        } else {
            for (NodeId v : negative) comm[v] = old_id;
        }
    }
    return Partition(std::move(comm));
}

}  // namespace dyncomm
