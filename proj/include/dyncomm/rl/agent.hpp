#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "dyncomm/detectors/actions.hpp"
#include "dyncomm/error.hpp"
#include "dyncomm/partition.hpp"
#include "dyncomm/random.hpp"
#include "dyncomm/rl/policy.hpp"
#include "dyncomm/rl/qtable.hpp"
#include "dyncomm/rl/sarsa.hpp"
#include "dyncomm/rl/state.hpp"
#include "dyncomm/scoring.hpp"
#include "dyncomm/snapshots.hpp"

namespace dyncomm {

struct AgentConfig {
    std::uint32_t max_episodes = 50;
    double alpha = 0.8;
    double gamma = 0.5;
    double epsilon = 0.2;
    std::uint32_t steps_per_episode = 20;
    std::uint32_t patience = 5;
    Metric metric = Metric::modularity_density;
    std::uint64_t seed = 0;
    std::uint32_t reward_buckets = 10;
    std::uint32_t walktrap_max_nodes = 50000;

    // Range checks; throws with the full list of offending fields.
    void validate() const {
        std::string bad;
        auto flag = [&](const char* name) {
            if (!bad.empty()) bad += ", ";
            bad += name;
        };
        if (!(alpha > 0.0 && alpha <= 1.0)) flag("alpha (want (0,1])");
        if (!(gamma >= 0.0 && gamma < 1.0)) flag("gamma (want [0,1))");
        if (!(epsilon >= 0.0 && epsilon <= 1.0)) flag("epsilon (want [0,1])");
        if (steps_per_episode == 0) flag("steps_per_episode (want >= 1)");
        if (patience == 0) flag("patience (want >= 1)");
        if (reward_buckets == 0) flag("reward_buckets (want >= 1)");
        if (!bad.empty()) throw validation_error("invalid agent config: " + bad);
    }
};

struct StepRecord {
    std::uint32_t episode = 0;
    std::uint32_t step = 0;
    State state;
    Action action;
    double reward = 0.0;
    double accumulated = 0.0;  // running sum within the episode
    double q_value = 0.0;      // value of (state, action) after the update
    bool refused = false;      // action was masked for this snapshot
};

struct EpisodeSummary {
    std::uint32_t episode = 0;
    std::size_t snapshot_index = 0;
    double accumulated = 0.0;
    double best_reward = 0.0;
    Partition best_partition;
};

struct EpisodeLog {
    std::vector<StepRecord> steps;
    std::vector<EpisodeSummary> episodes;

    static constexpr const char* csv_header =
        "episode,step,state,action,reward,accumulated_reward,q_value";

    void write_csv(std::ostream& out) const {
        out << csv_header << '\n';
        for (const StepRecord& s : steps) {
            out << s.episode << ',' << s.step << ',' << encode(s.state) << ','
                << encode(s.action) << ',' << format_double(s.reward) << ','
                << format_double(s.accumulated) << ',' << format_double(s.q_value) << '\n';
        }
    }

    std::uint64_t refused_steps() const {
        std::uint64_t n = 0;
        for (const StepRecord& s : steps) n += s.refused ? 1 : 0;
        return n;
    }

    // Episode with the highest best-step reward; earliest wins ties.
    const EpisodeSummary* best_episode() const {
        const EpisodeSummary* best = nullptr;
        for (const auto& e : episodes)
            if (!best || e.best_reward > best->best_reward) best = &e;
        return best;
    }
};

// One agent run over a snapshot stream. Episodes advance the snapshot on a
// fixed schedule (episode * k / max_episodes); every step runs the chosen
// detector, rewards with the configured metric, and applies the SARSA update.
// An episode ends at the step cap or once the best reward has stalled for
// `patience` consecutive steps. Fully deterministic for a fixed seed.
inline EpisodeLog run_agent(const SnapshotStream& stream, const AgentConfig& cfg,
                            QTable* qtable_out = nullptr) {
    cfg.validate();
    if (stream.size() == 0) throw validation_error("run_agent: empty snapshot stream");

    QTable q;
    EpisodeLog log;
    Rng policy_rng(derive_seed(cfg.seed, seed_stream::policy));
    // Detector seeds are a function of (snapshot, action), so replaying an
    // action on the same snapshot yields the same partition: rewards behave
    // as a stationary function of the state-action pair.
    auto detector_seed = [&](std::size_t snapshot, const Action& a) {
        return derive_seed(cfg.seed, seed_stream::detector,
                           (static_cast<std::uint64_t>(snapshot) << 32) | action_ordinal(a));
    };

    for (std::uint32_t episode = 0; episode < cfg.max_episodes; ++episode) {
        const std::size_t snap_idx =
            static_cast<std::size_t>(episode) * stream.size() / cfg.max_episodes;
        const Graph& g = stream[snap_idx];
        const std::vector<Action> actions = masked_actions(g, cfg.walktrap_max_nodes);

        State state = state_of(0.0, std::nullopt, cfg.reward_buckets);
        Action action = improve_modularity_policy(state, 0.0, cfg.epsilon, q, actions, policy_rng);

        EpisodeSummary summary;
        summary.episode = episode;
        summary.snapshot_index = snap_idx;
        double best = -std::numeric_limits<double>::infinity();
        double accumulated = 0.0;
        std::uint32_t stalled = 0;

        for (std::uint32_t step = 0; step < cfg.steps_per_episode; ++step) {
            const bool refused = !action_allowed(action, g, cfg.walktrap_max_nodes);
            Partition partition;
            double reward = 0.0;
            if (!refused) {
                partition = run_action(g, action, detector_seed(snap_idx, action));
                reward = score(g, partition, cfg.metric);
            }
            accumulated += reward;

            State next_state = state_of(reward, action.detector, cfg.reward_buckets);
            Action next_action =
                improve_modularity_policy(next_state, reward, cfg.epsilon, q, actions, policy_rng);
            double q_value =
                sarsa_update(q, state, action, reward, next_state, next_action, cfg.alpha, cfg.gamma);

            log.steps.push_back(
                {episode, step, state, action, reward, accumulated, q_value, refused});

            if (reward > best) {
                best = reward;
                summary.best_reward = reward;
                summary.best_partition = partition;
                stalled = 0;
            } else {
                ++stalled;
            }
            state = next_state;
            action = next_action;
            if (stalled >= cfg.patience) break;
        }
        summary.accumulated = accumulated;
        log.episodes.push_back(std::move(summary));
    }
    if (qtable_out) *qtable_out = std::move(q);
    return log;
}

}  // namespace dyncomm
