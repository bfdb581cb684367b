#pragma once

#include <vector>

#include "dyncomm/detectors/actions.hpp"
#include "dyncomm/error.hpp"
#include "dyncomm/random.hpp"
#include "dyncomm/rl/qtable.hpp"
#include "dyncomm/rl/state.hpp"

namespace dyncomm {

// Epsilon-greedy action choice over the masked action list (which must be
// sorted by encoding): explore uniformly with probability epsilon, otherwise
// take the argmax of Q(state, .) with ties going to the first action in
// encoding order. A positive reward additionally nudges the chosen action one
// step along its parameter grid, preferring a parameter tweak over switching
// methods when the current one is earning reward.
inline Action improve_modularity_policy(const State& state, double reward, double epsilon,
                                        const QTable& q, const std::vector<Action>& actions,
                                        Rng& rng) {
    if (actions.empty())
        throw validation_error("improve_modularity_policy: action space is empty after masking");
    Action chosen;
    if (rng.uniform_double() < epsilon) {
        chosen = actions[rng.uniform_int(actions.size())];
    } else {
        chosen = actions.front();
        double best = q.get(state, chosen);
        for (const Action& a : actions) {
            double v = q.get(state, a);
            if (v > best) {
                best = v;
                chosen = a;
            }
        }
    }
    if (reward > 0.0) chosen = neighbor_action(chosen, rng);
    return chosen;
}

}  // namespace dyncomm
