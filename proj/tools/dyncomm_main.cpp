// Experiment runner CLI: picks a dataset (edge-list file or Erdos-Renyi),
// snapshots it, runs the SARSA agent over the detector action space, and
// writes the episode CSV, Q-table dump, partitions, plot series and a JSON
// report into the output directory. A previous run's echoed config.txt can be
// replayed with --config; explicit flags override it.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dyncomm/experiment/config.hpp"
#include "dyncomm/experiment/runner.hpp"

using namespace dyncomm;

int main(int argc, char** argv) {
    CLI::App app{"Community detection for dynamic networks, tuned by a SARSA agent"};

    std::string config_path;
    std::string dataset;
    std::vector<std::string> er_args;
    std::uint32_t limit_nodes = 0;
    std::uint32_t snapshots = 5;
    std::string order = "as-read";
    std::uint32_t episodes = 50;
    double alpha = 0.8, gamma = 0.5, epsilon = 0.2;
    std::uint32_t steps = 20, patience = 5;
    std::string metric = "qds";
    std::uint64_t seed = 0;
    std::uint32_t buckets = 10;
    std::uint32_t walktrap_limit = 50000;
    std::string baselines = "none";
    std::string out_dir = "out";
    bool dump_snapshots = false;

    auto* config_opt = app.add_option("--config", config_path, "Replay an echoed config file");
    auto* dataset_opt = app.add_option("--dataset", dataset, "SNAP edge-list file");
    auto* er_opt = app.add_option("--er", er_args, "Erdos-Renyi graph: N P")->expected(2);
    auto* limit_opt = app.add_option("--limit-nodes", limit_nodes,
                                     "Restrict to the first N nodes of the dataset");
    auto* snap_opt = app.add_option("--snapshots", snapshots, "Snapshot count");
    auto* order_opt = app.add_option("--order", order, "Edge order: as-read | shuffled");
    auto* ep_opt = app.add_option("--episodes", episodes, "Agent episodes");
    auto* alpha_opt = app.add_option("--alpha", alpha, "Learning rate");
    auto* gamma_opt = app.add_option("--gamma", gamma, "Future reward discount");
    auto* eps_opt = app.add_option("--epsilon", epsilon, "Exploration probability");
    auto* steps_opt = app.add_option("--steps", steps, "Step cap per episode");
    auto* pat_opt = app.add_option("--patience", patience, "Stop after this many stalled steps");
    auto* metric_opt = app.add_option("--metric", metric, "Reward metric: q | qds");
    auto* seed_opt = app.add_option("--seed", seed, "Root seed");
    auto* buckets_opt = app.add_option("--buckets", buckets, "Reward buckets in the state");
    auto* wt_opt = app.add_option("--walktrap-limit", walktrap_limit,
                                  "Mask walktrap above this node count");
    auto* base_opt =
        app.add_option("--baselines", baselines, "Baselines: none | null | static | all");
    app.add_option("--out", out_dir, "Output directory");
    auto* dump_opt = app.add_flag("--dump-snapshots", dump_snapshots, "Write snapshot edge lists");

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg;
        if (config_opt->count() > 0) {
            std::ifstream in(config_path);
            if (!in) throw io_error("cannot open config " + config_path);
            cfg = ExperimentConfig::parse(in);
        }
        if (dataset_opt->count() > 0) {
            cfg.dataset_path = dataset;
            cfg.use_er = false;
        }
        if (er_opt->count() > 0) {
            cfg.use_er = true;
            cfg.dataset_path.clear();
            cfg.er_n = static_cast<std::uint32_t>(std::stoul(er_args[0]));
            cfg.er_p = std::stod(er_args[1]);
        }
        if (limit_opt->count() > 0) cfg.limit_nodes = limit_nodes;
        if (snap_opt->count() > 0) cfg.snapshot_count = snapshots;
        if (order_opt->count() > 0) {
            auto o = edge_order_from_string(order);
            if (!o) throw validation_error("unknown order \"" + order + "\"");
            cfg.order = *o;
        }
        if (ep_opt->count() > 0) cfg.agent.max_episodes = episodes;
        if (alpha_opt->count() > 0) cfg.agent.alpha = alpha;
        if (gamma_opt->count() > 0) cfg.agent.gamma = gamma;
        if (eps_opt->count() > 0) cfg.agent.epsilon = epsilon;
        if (steps_opt->count() > 0) cfg.agent.steps_per_episode = steps;
        if (pat_opt->count() > 0) cfg.agent.patience = patience;
        if (metric_opt->count() > 0) {
            auto m = metric_from_string(metric);
            if (!m) throw validation_error("unknown metric \"" + metric + "\"");
            cfg.agent.metric = *m;
        }
        if (seed_opt->count() > 0) cfg.agent.seed = seed;
        if (buckets_opt->count() > 0) cfg.agent.reward_buckets = buckets;
        if (wt_opt->count() > 0) cfg.agent.walktrap_max_nodes = walktrap_limit;
        if (base_opt->count() > 0) {
            auto b = baselines_from_string(baselines);
            if (!b) throw validation_error("unknown baselines \"" + baselines + "\"");
            cfg.baselines = *b;
        }
        cfg.out_dir = out_dir;
        if (dump_opt->count() > 0) cfg.dump_snapshots = dump_snapshots;

        RunReport report = run_experiment(cfg);
        std::cout << "episodes: " << report.episodes << "\n"
                  << "average " << to_string(cfg.agent.metric)
                  << ": " << format_double(report.average_metric) << "\n"
                  << "best " << to_string(cfg.agent.metric) << ": "
                  << format_double(report.best_metric) << "\n";
        if (report.has_static)
            std::cout << "best static baseline: " << format_double(report.best_static) << "\n";
        if (report.null_run)
            std::cout << "null model average: " << format_double(report.null_run->average_metric)
                      << "\n";
        std::cout << "wall seconds: " << format_double(report.wall_seconds) << "\n"
                  << "report: " << (std::filesystem::path(cfg.out_dir) / "report.json").string()
                  << "\n";
        return 0;
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const io_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
