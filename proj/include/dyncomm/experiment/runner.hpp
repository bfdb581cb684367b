#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dyncomm/edge_list.hpp"
#include "dyncomm/partition.hpp"
#include "dyncomm/erdos_renyi.hpp"
#include "dyncomm/error.hpp"
#include "dyncomm/experiment/config.hpp"
#include "dyncomm/graph.hpp"
#include "dyncomm/rl/agent.hpp"
#include "dyncomm/snapshots.hpp"
#include "dyncomm/util.hpp"

namespace dyncomm {

struct ArtifactEntry {
    std::string name;  // path relative to the run's output directory
    std::string hash;  // fnv1a64 of the file bytes
};

struct BaselineRow {
    std::string detector;
    double average = 0.0;
    double best = 0.0;
    bool skipped = false;
    std::string note;
};

struct RunReport {
    std::string label = "agent";
    std::string config_hash;
    double average_metric = 0.0;  // mean over episodes of the episode's mean step reward
    double best_metric = 0.0;     // highest single-step reward
    double wall_seconds = 0.0;
    std::uint64_t episodes = 0;
    std::uint64_t refused_steps = 0;
    std::vector<BaselineRow> static_baselines;
    double best_static = 0.0;
    bool has_static = false;
    std::vector<ArtifactEntry> artifacts;
    std::shared_ptr<RunReport> null_run;  // set when the null baseline ran

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["label"] = label;
        j["config_hash"] = config_hash;
        j["average_metric"] = average_metric;
        j["best_metric"] = best_metric;
        j["wall_seconds"] = wall_seconds;
        j["episodes"] = episodes;
        j["refused_steps"] = refused_steps;
        j["artifacts"] = nlohmann::json::array();
        for (const auto& a : artifacts) j["artifacts"].push_back({{"name", a.name}, {"hash", a.hash}});
        if (has_static) {
            j["static_baselines"] = nlohmann::json::array();
            for (const auto& row : static_baselines) {
                nlohmann::json r{{"detector", row.detector},
                                 {"average", row.average},
                                 {"best", row.best},
                                 {"skipped", row.skipped}};
                if (!row.note.empty()) r["note"] = row.note;
                j["static_baselines"].push_back(r);
            }
            j["best_static"] = best_static;
        }
        if (null_run) j["null"] = null_run->to_json();
        return j;
    }
};

namespace detail {

inline std::string hash_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot read back " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return hex64(fnv1a64(buf.str()));
}

// per episode: (accumulated reward, mean step reward)
inline std::vector<std::pair<double, double>> episode_series(const EpisodeLog& log) {
    std::vector<std::pair<double, double>> out;
    out.reserve(log.episodes.size());
    std::vector<std::uint64_t> counts(log.episodes.size(), 0);
    for (const StepRecord& s : log.steps) ++counts[s.episode];
    for (const EpisodeSummary& e : log.episodes) {
        double mean = counts[e.episode] > 0
                          ? e.accumulated / static_cast<double>(counts[e.episode])
                          : 0.0;
        out.emplace_back(e.accumulated, mean);
    }
    return out;
}

}  // namespace detail

// Loads or generates the configured graph (node-prefix limited when asked).
inline Graph load_experiment_graph(const ExperimentConfig& cfg) {
    Graph g;
    if (!cfg.dataset_path.empty()) {
        std::ifstream in(cfg.dataset_path);
        if (!in) throw io_error("cannot open dataset " + cfg.dataset_path);
        g = load_edge_list(in).graph;
    } else {
        g = erdos_renyi(cfg.er_n, cfg.er_p, derive_seed(cfg.agent.seed, seed_stream::graph));
    }
    if (cfg.limit_nodes != 0) g = induced_prefix(g, cfg.limit_nodes);
    return g;
}

// (episode, accumulated_reward) and (episode, mean_step_reward) CSV series.
// Returns the two paths. Refuses an empty log.
inline std::vector<std::string> emit_plot_data(const EpisodeLog& log,
                                               const std::filesystem::path& dir) {
    if (log.episodes.empty())
        throw validation_error("emit_plot_data: episode log is empty");
    std::filesystem::create_directories(dir);
    auto series = detail::episode_series(log);
    std::vector<std::string> paths;
    {
        std::ofstream out(dir / "accumulated_reward.csv");
        out << "episode,accumulated_reward\n";
        for (std::size_t i = 0; i < series.size(); ++i)
            out << i << ',' << format_double(series[i].first) << '\n';
        paths.push_back((dir / "accumulated_reward.csv").string());
    }
    {
        std::ofstream out(dir / "mean_step_reward.csv");
        out << "episode,mean_step_reward\n";
        for (std::size_t i = 0; i < series.size(); ++i)
            out << i << ',' << format_double(series[i].second) << '\n';
        paths.push_back((dir / "mean_step_reward.csv").string());
    }
    return paths;
}

// Default-parameter action per detector for the static baseline comparison.
inline Action default_action(DetectorId id) {
    switch (id) {
        case DetectorId::leading_eigenvector: return {id, 2};  // unbounded splits
        case DetectorId::walktrap: return {id, 2};             // t = 4
        case DetectorId::label_propagation: return {id, 2};    // 100 sweeps
        case DetectorId::multilevel: return {id, 2};           // resolution 1.0
    }
    return {id, 0};
}

namespace detail {

inline std::vector<BaselineRow> static_rows(const SnapshotStream& stream,
                                            const ExperimentConfig& cfg) {
    std::vector<BaselineRow> rows;
    for (DetectorId id : all_detectors) {
        BaselineRow row;
        row.detector = std::string(detector_name(id));
        double sum = 0.0;
        double best = -std::numeric_limits<double>::infinity();
        std::size_t counted = 0;
        for (std::size_t i = 0; i < stream.size(); ++i) {
            const Graph& g = stream[i];
            Action a = default_action(id);
            if (!action_allowed(a, g, cfg.agent.walktrap_max_nodes)) continue;
            // same (snapshot, action) seed the agent would use, so baseline
            // rows are directly comparable with agent rewards
            Partition p = run_action(
                g, a,
                derive_seed(cfg.agent.seed, seed_stream::detector,
                            (static_cast<std::uint64_t>(i) << 32) | action_ordinal(a)));
            double s = score(g, p, cfg.agent.metric);
            sum += s;
            best = std::max(best, s);
            ++counted;
        }
        if (counted == 0) {
            row.skipped = true;
            row.note = "skipped: node count above walktrap limit";
            row.best = 0.0;
        } else {
            row.average = sum / static_cast<double>(counted);
            row.best = best;
            if (counted < stream.size())
                row.note = "partial: some snapshots above walktrap limit";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void attach_static(RunReport& report, std::vector<BaselineRow> rows) {
    report.static_baselines = std::move(rows);
    report.has_static = true;
    report.best_static = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& row : report.static_baselines) {
        if (row.skipped) continue;
        report.best_static = std::max(report.best_static, row.average);
        any = true;
    }
    if (!any) report.best_static = 0.0;
}

inline RunReport run_core(const ExperimentConfig& cfg, const std::string& label,
                          bool with_baselines);

}  // namespace detail

// Same pipeline with action selection made entirely random (epsilon forced to
// 1); artifacts land under <out>/null and the report is labeled "null".
inline RunReport run_null_model(const ExperimentConfig& cfg) {
    ExperimentConfig null_cfg = cfg;
    null_cfg.agent.epsilon = 1.0;
    null_cfg.baselines = BaselineSet::none;
    null_cfg.out_dir = (std::filesystem::path(cfg.out_dir) / "null").string();
    return detail::run_core(null_cfg, "null", false);
}

// Each detector once per snapshot at default parameters; the agent's score is
// compared against the best of these.
inline RunReport run_static_baselines(const ExperimentConfig& cfg) {
    cfg.validate();
    Graph g = load_experiment_graph(cfg);
    SnapshotStream stream = build_snapshots(
        g, cfg.snapshot_count, cfg.order, derive_seed(cfg.agent.seed, seed_stream::snapshots));
    RunReport report;
    report.label = "static";
    report.config_hash = hex64(fnv1a64(cfg.serialize()));
    auto t0 = std::chrono::steady_clock::now();
    detail::attach_static(report, detail::static_rows(stream, cfg));
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// Full experiment: load/generate, snapshot, run the agent, write artifacts,
// then optional baselines. Artifact hashes land in report.json.
inline RunReport run_experiment(const ExperimentConfig& cfg) {
    return detail::run_core(cfg, "agent", true);
}

namespace detail {

inline RunReport run_core(const ExperimentConfig& cfg, const std::string& label,
                          bool with_baselines) {
    cfg.validate();
    const std::filesystem::path out(cfg.out_dir);
    std::filesystem::create_directories(out);

    RunReport report;
    report.label = label;
    report.config_hash = hex64(fnv1a64(cfg.serialize()));

    auto t0 = std::chrono::steady_clock::now();
    Graph g = load_experiment_graph(cfg);
    SnapshotStream stream = build_snapshots(
        g, cfg.snapshot_count, cfg.order, derive_seed(cfg.agent.seed, seed_stream::snapshots));

    QTable qtable;
    EpisodeLog log = run_agent(stream, cfg.agent, &qtable);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    report.episodes = log.episodes.size();
    report.refused_steps = log.refused_steps();
    auto series = episode_series(log);
    double best = 0.0, mean_sum = 0.0;
    for (const StepRecord& s : log.steps) best = std::max(best, s.reward);
    for (auto& [acc, mean] : series) mean_sum += mean;
    report.best_metric = log.steps.empty() ? 0.0 : best;
    report.average_metric =
        series.empty() ? 0.0 : mean_sum / static_cast<double>(series.size());

    std::vector<std::string> written;
    auto write_text = [&](const std::string& name, const std::string& body) {
        std::ofstream f(out / name, std::ios::binary);
        if (!f) throw io_error("cannot write " + (out / name).string());
        f << body;
        written.push_back(name);
    };
    write_text("config.txt", cfg.serialize());
    {
        std::ostringstream csv;
        log.write_csv(csv);
        write_text("episodes.csv", csv.str());
    }
    {
        std::ostringstream dump;
        qtable.dump(dump);
        write_text("qtable.tsv", dump.str());
    }
    if (!log.episodes.empty()) {
        for (const std::string& p : emit_plot_data(log, out))
            written.push_back(std::filesystem::path(p).filename().string());
        std::filesystem::create_directories(out / "partitions");
        for (const EpisodeSummary& e : log.episodes) {
            char name[48];
            std::snprintf(name, sizeof(name), "partitions/episode_%03u.tsv", e.episode);
            const Graph& snap = stream[e.snapshot_index];
            std::ostringstream body;
            write_partition(body, snap, e.best_partition);
            write_text(name, body.str());
        }
        if (const EpisodeSummary* be = log.best_episode()) {
            std::ostringstream body;
            write_partition(body, stream[be->snapshot_index], be->best_partition);
            write_text("best_partition.tsv", body.str());
        }
    }
    if (cfg.dump_snapshots)
        for (const std::string& p : write_snapshot_files(stream, out / "snapshots"))
            written.push_back("snapshots/" + std::filesystem::path(p).filename().string());

    if (with_baselines &&
        (cfg.baselines == BaselineSet::static_detectors || cfg.baselines == BaselineSet::all)) {
        attach_static(report, static_rows(stream, cfg));
        std::ostringstream csv;
        csv << "detector,average,best,skipped\n";
        for (const auto& row : report.static_baselines)
            csv << row.detector << ',' << format_double(row.average) << ','
                << format_double(row.best) << ',' << (row.skipped ? "true" : "false") << '\n';
        write_text("baselines.csv", csv.str());
    }
    if (with_baselines &&
        (cfg.baselines == BaselineSet::null_model || cfg.baselines == BaselineSet::all)) {
        report.null_run = std::make_shared<RunReport>(run_null_model(cfg));
    }

    for (const std::string& name : written)
        report.artifacts.push_back({name, hash_file(out / name)});
    {
        std::ofstream f(out / "report.json", std::ios::binary);
        if (!f) throw io_error("cannot write " + (out / "report.json").string());
        f << report.to_json().dump(2) << '\n';
    }
    return report;
}

}  // namespace detail

}  // namespace dyncomm
