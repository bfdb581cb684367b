#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "dyncomm/detectors/actions.hpp"

namespace dyncomm {

// Tabular state: which detector ran last, and the current partition quality
// discretized into equal-width buckets over [0,1].
struct State {
    std::optional<DetectorId> last_detector;
    std::uint32_t reward_bucket = 0;

    auto operator<=>(const State&) const = default;
};

inline State state_of(double metric_value, std::optional<DetectorId> last_detector,
                      std::uint32_t buckets = 10) {
    double clamped = std::clamp(metric_value, 0.0, 1.0);
    auto bucket = static_cast<std::uint32_t>(clamped * buckets);
    return {last_detector, std::min(bucket, buckets - 1)};
}

inline std::string encode(const State& s) {
    std::string out = s.last_detector ? std::string(detector_name(*s.last_detector)) : "none";
    out += ":" + std::to_string(s.reward_bucket);
    return out;
}

}  // namespace dyncomm
