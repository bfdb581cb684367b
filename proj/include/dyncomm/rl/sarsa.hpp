#pragma once

#include "dyncomm/rl/qtable.hpp"

namespace dyncomm {

// On-policy temporal-difference update:
//   Q(s,a) <- Q(s,a) + alpha * (r + gamma * Q(s',a') - Q(s,a))
// Returns the updated value.
inline double sarsa_update(QTable& q, const State& s, const Action& a, double reward,
                           const State& s2, const Action& a2, double alpha, double gamma) {
    const double target = reward + gamma * q.get(s2, a2);
    auto& entry = q.slot(s, a);
    entry.value += alpha * (target - entry.value);
    ++entry.visits;
    return entry.value;
}

}  // namespace dyncomm
