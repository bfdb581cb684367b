#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dyncomm/detectors/label_propagation.hpp"
#include "dyncomm/detectors/leading_eigenvector.hpp"
#include "dyncomm/detectors/multilevel.hpp"
#include "dyncomm/detectors/walktrap.hpp"
#include "dyncomm/error.hpp"
#include "dyncomm/graph.hpp"
#include "dyncomm/random.hpp"
#include "dyncomm/util.hpp"

namespace dyncomm {

enum class DetectorId : std::uint8_t {
    leading_eigenvector,
    walktrap,
    label_propagation,
    multilevel,
};

inline constexpr std::array<DetectorId, 4> all_detectors{
    DetectorId::leading_eigenvector,
    DetectorId::walktrap,
    DetectorId::label_propagation,
    DetectorId::multilevel,
};

inline std::string_view detector_name(DetectorId id) {
    switch (id) {
        case DetectorId::leading_eigenvector: return "leading_eigenvector";
        case DetectorId::walktrap: return "walktrap";
        case DetectorId::label_propagation: return "label_propagation";
        case DetectorId::multilevel: return "multilevel";
    }
    return "?";
}

inline std::optional<DetectorId> detector_from_name(std::string_view name) {
    for (DetectorId id : all_detectors)
        if (detector_name(id) == name) return id;
    return std::nullopt;
}

// Per-detector parameter grids. Small finite grids keep the tabular
// state-action space viable; they live here, away from the detectors, so they
// can change without touching algorithm code.
inline constexpr std::array<std::uint32_t, 3> le_max_splits_grid{4, 16, 0};  // 0 = unbounded
inline constexpr std::array<std::uint32_t, 7> wt_walk_length_grid{2, 3, 4, 5, 6, 7, 8};
inline constexpr std::array<std::uint32_t, 3> lp_max_sweeps_grid{10, 50, 100};
inline constexpr std::array<double, 5> ml_resolution_grid{0.5, 0.8, 1.0, 1.2, 1.5};

inline std::size_t grid_size(DetectorId id) {
    switch (id) {
        case DetectorId::leading_eigenvector: return le_max_splits_grid.size();
        case DetectorId::walktrap: return wt_walk_length_grid.size();
        case DetectorId::label_propagation: return lp_max_sweeps_grid.size();
        case DetectorId::multilevel: return ml_resolution_grid.size();
    }
    return 0;
}

// One point of the action space: a detector plus a position in its grid.
// Invocation seeds are injected at run time and are not part of the action.
struct Action {
    DetectorId detector = DetectorId::leading_eigenvector;
    std::uint32_t param_index = 0;

    auto operator<=>(const Action&) const = default;
};

// Fixed enumeration order: detectors as declared, grid positions ascending.
inline const std::vector<Action>& enumerate_actions() {
    static const std::vector<Action> actions = [] {
        std::vector<Action> out;
        for (DetectorId id : all_detectors)
            for (std::uint32_t i = 0; i < grid_size(id); ++i) out.push_back({id, i});
        return out;
    }();
    return actions;
}

// Position in the enumeration order; stable across calls.
inline std::uint64_t action_ordinal(const Action& a) {
    std::uint64_t offset = 0;
    for (DetectorId id : all_detectors) {
        if (id == a.detector) return offset + a.param_index;
        offset += grid_size(id);
    }
    return offset;
}

// Stable textual form, "detector_name(key=value)"; used in CSV logs and
// Q-table dumps.
inline std::string encode(const Action& a) {
    std::string out{detector_name(a.detector)};
    switch (a.detector) {
        case DetectorId::leading_eigenvector: {
            std::uint32_t splits = le_max_splits_grid[a.param_index];
            out += "(max_splits=";
            out += splits == 0 ? "unbounded" : std::to_string(splits);
            out += ")";
            break;
        }
        case DetectorId::walktrap:
            out += "(t=" + std::to_string(wt_walk_length_grid[a.param_index]) + ")";
            break;
        case DetectorId::label_propagation:
            out += "(max_sweeps=" + std::to_string(lp_max_sweeps_grid[a.param_index]) + ")";
            break;
        case DetectorId::multilevel:
            out += "(resolution=" + format_double(ml_resolution_grid[a.param_index]) + ")";
            break;
    }
    return out;
}

inline Action decode_action(std::string_view text) {
    for (const Action& a : enumerate_actions())
        if (encode(a) == text) return a;
    throw validation_error("unknown action encoding: " + std::string(text));
}

// Walktrap holds every walk profile in memory, so the agent masks it out above
// a node threshold instead of letting the detector thrash.
inline bool action_allowed(const Action& a, const Graph& g, std::uint32_t walktrap_max_nodes) {
    if (a.detector == DetectorId::walktrap) return g.node_count() <= walktrap_max_nodes;
    return true;
}

// Actions usable on g, sorted by textual encoding (the policy's tie-break and
// uniform-draw order).
inline std::vector<Action> masked_actions(const Graph& g, std::uint32_t walktrap_max_nodes) {
    std::vector<Action> out;
    for (const Action& a : enumerate_actions())
        if (action_allowed(a, g, walktrap_max_nodes)) out.push_back(a);
    std::sort(out.begin(), out.end(),
              [](const Action& l, const Action& r) { return encode(l) < encode(r); });
    return out;
}

// One grid step on the action's parameter, direction drawn from the generator
// (flipped at the grid edge).
inline Action neighbor_action(const Action& a, Rng& rng) {
    const std::size_t size = grid_size(a.detector);
    if (size <= 1) return a;
    bool up = rng.uniform_int(2) == 1;
    Action out = a;
    if (up) {
        if (a.param_index + 1 < size)
            ++out.param_index;
        else
            --out.param_index;
    } else {
        if (a.param_index > 0)
            --out.param_index;
        else
            ++out.param_index;
    }
    return out;
}

// Runs the detector behind an action. The seed drives the seeded detectors;
// the deterministic ones ignore it.
inline Partition run_action(const Graph& g, const Action& a, std::uint64_t seed) {
    switch (a.detector) {
        case DetectorId::leading_eigenvector: {
            LeadingEigenvectorParams p;
            p.max_splits = le_max_splits_grid[a.param_index];
            return detect_leading_eigenvector(g, p);
        }
        case DetectorId::walktrap: {
            WalktrapParams p;
            p.walk_length = wt_walk_length_grid[a.param_index];
            return detect_walktrap(g, p);
        }
        case DetectorId::label_propagation: {
            LabelPropagationParams p;
            p.max_sweeps = lp_max_sweeps_grid[a.param_index];
            p.seed = seed;
            return detect_label_propagation(g, p);
        }
        case DetectorId::multilevel: {
            MultilevelParams p;
            p.resolution = ml_resolution_grid[a.param_index];
            p.seed = seed;
            return detect_multilevel(g, p);
        }
    }
    throw internal_error("run_action: unknown detector");
}

}  // namespace dyncomm
