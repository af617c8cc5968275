#include "folio/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "folio/backtest.hpp"
#include "folio/bucketing.hpp"
#include "folio/csv.hpp"
#include "folio/errors.hpp"
#include "folio/report.hpp"
#include "folio/util.hpp"

namespace folio {

namespace {

std::vector<int> parse_int_list(const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

std::vector<StrategyId> parse_strategy_list(const std::string& value) {
    std::vector<StrategyId> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto s = parse_strategy(item);
        if (!s) throw ConfigError("unknown strategy '" + item + "' (expected MV, EW or MC)");
        out.push_back(*s);
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

}  // namespace

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "returns") config.returns_path = value;
            else if (key == "scores") config.scores_path = value;
            else if (key == "caps") config.caps_path = value;
            else if (key == "k") config.bucket_count = std::stoi(value);
            else if (key == "ws") config.window_sizes = parse_int_list(value);
            else if (key == "strategies") config.strategies = parse_strategy_list(value);
            else if (key == "annualization") config.annualization = std::stoi(value);
            else if (key == "block_length") config.block_length = std::stoi(value);
            else if (key == "resamples") config.resamples = std::stoi(value);
            else if (key == "seed") { config.seed = std::stoull(value); config.seed_set = true; }
            else if (key == "out_dir") config.out_dir = value;
            else if (key == "allow_empty_pt1") config.allow_empty_pt1 = (value == "1" || value == "true");
            else if (key == "dump_weights") config.dump_weights = (value == "1" || value == "true");
            else if (key == "ridge_scale") config.ridge_scale = std::stod(value);
            else if (key == "tol") config.tol = std::stod(value);
            else if (key == "max_iter") config.max_iter = std::stoi(value);
            else throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
        } catch (const std::out_of_range&) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": value out of range for '" + key + "'");
        }
    }
}

void validate_run_config(const RunConfig& config) {
    if (config.returns_path.empty()) throw ConfigError("returns path is required");
    if (config.scores_path.empty()) throw ConfigError("scores path is required");
    if (config.caps_path.empty()) throw ConfigError("caps path is required");
    if (!config.seed_set) throw ConfigError("seed is required for reproducibility");
    if (config.bucket_count < 1) throw ConfigError("k must be >= 1");
    if (config.window_sizes.empty()) throw ConfigError("at least one window size is required");
    for (int ws : config.window_sizes)
        if (ws < 2) throw ConfigError("window size must be >= 2, got " + std::to_string(ws));
    if (config.strategies.empty()) throw ConfigError("at least one strategy is required");
    if (config.annualization < 1) throw ConfigError("annualization must be >= 1");
    if (config.block_length < 1) throw ConfigError("block_length must be >= 1");
    if (config.resamples < 1) throw ConfigError("resamples must be >= 1");
}

std::vector<std::string> run_pipeline(const RunConfig& config) {
    validate_run_config(config);
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    auto out_path = [&](const std::string& name) {
        return (fs::path(config.out_dir) / name).string();
    };

    const ReturnPanel panel = load_return_panel(config.returns_path);
    const CapPanel caps = load_cap_panel(config.caps_path, panel);
    const ScoreVector scores = load_scores(config.scores_path, panel);

    // window sizes are validated against T before any computation starts
    for (int ws : config.window_sizes)
        if (ws >= panel.num_days())
            throw WindowTooLongError("window size " + std::to_string(ws) +
                                     " >= T = " + std::to_string(panel.num_days()));

    std::vector<std::string> written;

    const PanelDescriptives desc = compute_descriptives(panel, config.annualization);
    const ScoreDescriptives score_desc = compute_score_descriptives(scores);
    write_descriptives_csv(desc, score_desc, config.annualization, out_path("descriptives.csv"));
    written.push_back(out_path("descriptives.csv"));

    const BucketAssignment buckets =
        assign_buckets(scores, config.bucket_count, config.allow_empty_pt1);
    write_buckets_csv(buckets, scores, out_path("buckets.csv"));
    write_bucket_summary_csv(buckets, out_path("bucket_summary.csv"));
    written.push_back(out_path("buckets.csv"));
    written.push_back(out_path("bucket_summary.csv"));

    BootstrapParams bootstrap;
    bootstrap.block_length = config.block_length;
    bootstrap.resamples = config.resamples;
    bootstrap.seed = config.seed;
    bootstrap.threads = config.threads;

    for (int ws : config.window_sizes) {
        BacktestConfig bt;
        bt.window_size = ws;
        bt.strategies = config.strategies;
        bt.buckets = buckets;
        bt.annualization = config.annualization;
        bt.tol = config.tol;
        bt.max_iter = config.max_iter;
        bt.ridge_scale = config.ridge_scale;
        bt.threads = config.threads;
        const BacktestResult result = run_rolling_backtest(panel, caps, bt);

        const ResultTable table =
            build_result_table(result, ws, config.annualization, bootstrap);
        const std::string metrics_name = "metrics_ws" + std::to_string(ws) + ".csv";
        write_metrics_csv(table, out_path(metrics_name));
        written.push_back(out_path(metrics_name));

        for (StrategyId s : config.strategies) {
            const std::string wealth_name =
                "wealth_ws" + std::to_string(ws) + "_" + strategy_name(s) + ".csv";
            write_wealth_csv(result, s, out_path(wealth_name));
            written.push_back(out_path(wealth_name));
        }

        if (config.dump_weights) {
            for (const auto& pair : result.pairs) {
                const std::string name = "weights_ws" + std::to_string(ws) + "_PT" +
                                         std::to_string(pair.bucket_id) + "_" +
                                         strategy_name(pair.strategy) + ".csv";
                write_weight_path_csv(result, pair, out_path(name));
                written.push_back(out_path(name));
            }
        }
    }

    // manifest: config echo + input content hashes; the timestamp is the
    // only field excluded from determinism guarantees
    nlohmann::json manifest;
    manifest["inputs"] = {
        {"returns", {{"path", config.returns_path}, {"fnv1a64", hash_file(config.returns_path)}}},
        {"scores", {{"path", config.scores_path}, {"fnv1a64", hash_file(config.scores_path)}}},
        {"caps", {{"path", config.caps_path}, {"fnv1a64", hash_file(config.caps_path)}}},
    };
    manifest["config"] = {
        {"k", config.bucket_count},
        {"window_sizes", config.window_sizes},
        {"annualization", config.annualization},
        {"block_length", config.block_length},
        {"resamples", config.resamples},
        {"seed", config.seed},
        {"ridge_scale", config.ridge_scale},
        {"tol", config.tol},
        {"max_iter", config.max_iter},
        {"allow_empty_pt1", config.allow_empty_pt1},
    };
    std::vector<std::string> names;
    for (StrategyId s : config.strategies) names.emplace_back(strategy_name(s));
    manifest["config"]["strategies"] = names;
    manifest["timestamp"] = static_cast<std::int64_t>(
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
    {
        std::ofstream out(out_path("run_manifest.json"), std::ios::binary);
        out << manifest.dump(2) << '\n';
    }
    written.push_back(out_path("run_manifest.json"));
    return written;
}

}  // namespace folio
