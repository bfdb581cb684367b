#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "dyncomm/error.hpp"
#include "dyncomm/rl/agent.hpp"
#include "dyncomm/snapshots.hpp"
#include "dyncomm/util.hpp"

namespace dyncomm {

enum class BaselineSet { none, null_model, static_detectors, all };

inline std::string_view to_string(BaselineSet b) {
    switch (b) {
        case BaselineSet::none: return "none";
        case BaselineSet::null_model: return "null";
        case BaselineSet::static_detectors: return "static";
        case BaselineSet::all: return "all";
    }
    return "?";
}

inline std::optional<BaselineSet> baselines_from_string(std::string_view s) {
    if (s == "none") return BaselineSet::none;
    if (s == "null") return BaselineSet::null_model;
    if (s == "static") return BaselineSet::static_detectors;
    if (s == "all") return BaselineSet::all;
    return std::nullopt;
}

// Everything that determines a run. Serializes to a key=value file; the output
// directory is deliberately not part of it (same science, any destination).
struct ExperimentConfig {
    // dataset: exactly one source
    std::string dataset_path;
    bool use_er = false;
    std::uint32_t er_n = 0;
    double er_p = 0.0;
    std::uint32_t limit_nodes = 0;  // 0 = whole graph; otherwise node-prefix subgraph

    std::uint32_t snapshot_count = 5;
    EdgeOrder order = EdgeOrder::as_read;
    AgentConfig agent;
    BaselineSet baselines = BaselineSet::none;
    bool dump_snapshots = false;

    std::string out_dir = "out";  // not serialized

    void validate() const {
        std::string bad;
        auto flag = [&](const std::string& f) {
            if (!bad.empty()) bad += ", ";
            bad += f;
        };
        const bool has_file = !dataset_path.empty();
        if (has_file == use_er) flag("dataset (set exactly one of dataset path / er)");
        if (use_er && !(er_p >= 0.0 && er_p <= 1.0)) flag("er_p (want [0,1])");
        if (snapshot_count == 0) flag("snapshots (want >= 1)");
        try {
            agent.validate();
        } catch (const validation_error& e) {
            flag(e.what());
        }
        if (!bad.empty()) throw validation_error("invalid experiment config: " + bad);
    }

    std::string serialize() const {
        std::ostringstream out;
        if (!dataset_path.empty()) out << "dataset = " << dataset_path << '\n';
        if (use_er) out << "er = " << er_n << ' ' << format_double(er_p) << '\n';
        if (limit_nodes != 0) out << "limit_nodes = " << limit_nodes << '\n';
        out << "snapshots = " << snapshot_count << '\n';
        out << "order = " << to_string(order) << '\n';
        out << "episodes = " << agent.max_episodes << '\n';
        out << "alpha = " << format_double(agent.alpha) << '\n';
        out << "gamma = " << format_double(agent.gamma) << '\n';
        out << "epsilon = " << format_double(agent.epsilon) << '\n';
        out << "steps = " << agent.steps_per_episode << '\n';
        out << "patience = " << agent.patience << '\n';
        out << "metric = " << to_string(agent.metric) << '\n';
        out << "seed = " << agent.seed << '\n';
        out << "buckets = " << agent.reward_buckets << '\n';
        out << "walktrap_limit = " << agent.walktrap_max_nodes << '\n';
        out << "baselines = " << to_string(baselines) << '\n';
        out << "dump_snapshots = " << (dump_snapshots ? "true" : "false") << '\n';
        return out.str();
    }

    static ExperimentConfig parse(std::istream& in) {
        ExperimentConfig cfg;
        cfg.snapshot_count = 5;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::string_view sv = trim(line);
            if (sv.empty() || sv.front() == '#') continue;
            auto eq = sv.find('=');
            if (eq == std::string_view::npos)
                throw parse_error(line_no, "expected key = value");
            std::string key{trim(sv.substr(0, eq))};
            std::string value{trim(sv.substr(eq + 1))};
            if (!apply_setting(cfg, key, value))
                throw parse_error(line_no, "unknown config key \"" + key + "\"");
        }
        return cfg;
    }

private:
    template <typename T>
    static bool parse_number(const std::string& v, T& out) {
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        return ec == std::errc{} && ptr == v.data() + v.size();
    }

    static bool apply_setting(ExperimentConfig& cfg, const std::string& key,
                              const std::string& value) {
        if (key == "dataset") {
            cfg.dataset_path = value;
            return true;
        }
        if (key == "er") {
            std::istringstream iss(value);
            std::string n_tok, p_tok, extra;
            iss >> n_tok >> p_tok;
            if (iss >> extra) return false;
            cfg.use_er = parse_number(n_tok, cfg.er_n) && parse_number(p_tok, cfg.er_p);
            return cfg.use_er;
        }
        if (key == "limit_nodes") return parse_number(value, cfg.limit_nodes);
        if (key == "snapshots") return parse_number(value, cfg.snapshot_count);
        if (key == "order") {
            auto o = edge_order_from_string(value);
            if (o) cfg.order = *o;
            return o.has_value();
        }
        if (key == "episodes") return parse_number(value, cfg.agent.max_episodes);
        if (key == "alpha") return parse_number(value, cfg.agent.alpha);
        if (key == "gamma") return parse_number(value, cfg.agent.gamma);
        if (key == "epsilon") return parse_number(value, cfg.agent.epsilon);
        if (key == "steps") return parse_number(value, cfg.agent.steps_per_episode);
        if (key == "patience") return parse_number(value, cfg.agent.patience);
        if (key == "metric") {
            auto m = metric_from_string(value);
            if (m) cfg.agent.metric = *m;
            return m.has_value();
        }
        if (key == "seed") return parse_number(value, cfg.agent.seed);
        if (key == "buckets") return parse_number(value, cfg.agent.reward_buckets);
        if (key == "walktrap_limit") return parse_number(value, cfg.agent.walktrap_max_nodes);
        if (key == "baselines") {
            auto b = baselines_from_string(value);
            if (b) cfg.baselines = *b;
            return b.has_value();
        }
        if (key == "dump_snapshots") {
            if (value == "true") cfg.dump_snapshots = true;
            else if (value == "false") cfg.dump_snapshots = false;
            else return false;
            return true;
        }
        return false;
    }
};

}  // namespace dyncomm
