#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include "folio/backtest.hpp"
#include "folio/bucketing.hpp"
#include "folio/csv.hpp"
#include "folio/descriptives.hpp"
#include "folio/errors.hpp"
#include "folio/inference.hpp"
#include "folio/pipeline.hpp"
#include "folio/report.hpp"
#include "folio/synth.hpp"

namespace fs = std::filesystem;
using namespace folio;

namespace {

std::string out_path(const RunConfig& config, const std::string& name) {
    return (fs::path(config.out_dir) / name).string();
}

void check_window_sizes(const RunConfig& config, const ReturnPanel& panel) {
    for (int ws : config.window_sizes)
        if (ws >= panel.num_days())
            throw WindowTooLongError("window size " + std::to_string(ws) +
                                     " >= T = " + std::to_string(panel.num_days()));
}

BacktestResult run_backtest_for(const RunConfig& config, const ReturnPanel& panel,
                                const CapPanel& caps, const BucketAssignment& buckets, int ws) {
    BacktestConfig bt;
    bt.window_size = ws;
    bt.strategies = config.strategies;
    bt.buckets = buckets;
    bt.annualization = config.annualization;
    bt.tol = config.tol;
    bt.max_iter = config.max_iter;
    bt.ridge_scale = config.ridge_scale;
    bt.threads = config.threads;
    return run_rolling_backtest(panel, caps, bt);
}

void write_oos_csv(const BacktestResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingInputError("cannot write file: " + path);
    out << "date";
    for (const auto& p : result.pairs)
        out << ",PT" << p.bucket_id << '_' << strategy_name(p.strategy);
    out << '\n';
    for (Eigen::Index i = 0; i < result.M; ++i) {
        out << result.oos_dates[static_cast<std::size_t>(i)];
        for (const auto& p : result.pairs) out << ',' << format_sig(p.oos_returns[i], 12);
        out << '\n';
    }
}

struct OosSeries {
    std::vector<std::string> labels;           // PT<b>_<strat>
    std::vector<Eigen::VectorXd> series;
};

OosSeries read_oos_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingInputError("cannot open oos file: " + path + " (run `backtest` first)");
    std::string line;
    if (!std::getline(in, line)) throw MissingInputError("empty oos file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    OosSeries out;
    {
        std::stringstream ss(line);
        std::string cell;
        bool first = true;
        while (std::getline(ss, cell, ',')) {
            if (!first) out.labels.push_back(cell);
            first = false;
        }
    }
    std::vector<std::vector<double>> cols(out.labels.size());
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        for (auto& col : cols) {
            if (!std::getline(ss, cell, ','))
                throw MissingInputError("short row in oos file: " + path);
            col.push_back(std::stod(cell));
        }
    }
    for (auto& col : cols)
        out.series.push_back(Eigen::Map<Eigen::VectorXd>(col.data(),
                                                         static_cast<Eigen::Index>(col.size())));
    return out;
}

int run_describe(const RunConfig& config) {
    const ReturnPanel panel = load_return_panel(config.returns_path);
    const ScoreVector scores = load_scores(config.scores_path, panel);
    const PanelDescriptives desc = compute_descriptives(panel, config.annualization);
    const ScoreDescriptives sd = compute_score_descriptives(scores);
    fs::create_directories(config.out_dir);
    write_descriptives_csv(desc, sd, config.annualization, out_path(config, "descriptives.csv"));
    std::cout << "T=" << desc.num_days << " N=" << desc.num_assets
              << " mean_ann=" << format_sig(desc.mean_annualized)
              << " sd_ann=" << format_sig(desc.sd_annualized)
              << " skew=" << format_sig(desc.skewness)
              << " ex_kurt=" << format_sig(desc.excess_kurtosis) << '\n';
    std::cout << "wrote " << out_path(config, "descriptives.csv") << '\n';
    return 0;
}

int run_bucket(const RunConfig& config) {
    const ReturnPanel panel = load_return_panel(config.returns_path);
    const ScoreVector scores = load_scores(config.scores_path, panel);
    const BucketAssignment buckets =
        assign_buckets(scores, config.bucket_count, config.allow_empty_pt1);
    fs::create_directories(config.out_dir);
    write_buckets_csv(buckets, scores, out_path(config, "buckets.csv"));
    write_bucket_summary_csv(buckets, out_path(config, "bucket_summary.csv"));
    for (const auto& b : buckets.buckets)
        std::cout << "PT" << b.id << ": " << b.assets.size() << " assets\n";
    return 0;
}

int run_backtest_cmd(const RunConfig& config) {
    const ReturnPanel panel = load_return_panel(config.returns_path);
    const CapPanel caps = load_cap_panel(config.caps_path, panel);
    const ScoreVector scores = load_scores(config.scores_path, panel);
    check_window_sizes(config, panel);
    const BucketAssignment buckets =
        assign_buckets(scores, config.bucket_count, config.allow_empty_pt1);
    fs::create_directories(config.out_dir);
    for (int ws : config.window_sizes) {
        const BacktestResult result = run_backtest_for(config, panel, caps, buckets, ws);
        write_oos_csv(result, out_path(config, "oos_ws" + std::to_string(ws) + ".csv"));
        for (StrategyId s : config.strategies)
            write_wealth_csv(result, s,
                             out_path(config, "wealth_ws" + std::to_string(ws) + "_" +
                                                  strategy_name(s) + ".csv"));
        if (config.dump_weights)
            for (const auto& pair : result.pairs)
                write_weight_path_csv(result, pair,
                                      out_path(config, "weights_ws" + std::to_string(ws) + "_PT" +
                                                           std::to_string(pair.bucket_id) + "_" +
                                                           strategy_name(pair.strategy) + ".csv"));
        std::cout << "ws=" << ws << ": M=" << result.M << ", " << result.pairs.size()
                  << " (bucket, strategy) pairs\n";
    }
    return 0;
}

int run_test_cmd(const RunConfig& config) {
    BootstrapParams params;
    params.block_length = config.block_length;
    params.resamples = config.resamples;
    params.seed = config.seed;
    params.threads = config.threads;
    for (int ws : config.window_sizes) {
        const OosSeries oos =
            read_oos_csv(out_path(config, "oos_ws" + std::to_string(ws) + ".csv"));
        // group columns by strategy; PT1 is the reference within each group
        std::unordered_map<std::string, std::unordered_map<int, const Eigen::VectorXd*>> groups;
        for (std::size_t i = 0; i < oos.labels.size(); ++i) {
            const auto& label = oos.labels[i];
            const auto us = label.rfind('_');
            if (label.rfind("PT", 0) != 0 || us == std::string::npos)
                throw MissingInputError("unrecognized oos column '" + label + "'");
            const int bucket = std::stoi(label.substr(2, us - 2));
            groups[label.substr(us + 1)][bucket] = &oos.series[i];
        }
        const std::string path = out_path(config, "tests_ws" + std::to_string(ws) + ".csv");
        std::ofstream out(path, std::ios::binary);
        out << "strategy,bucket,kind,statistic,p_value,stars,block_length,resamples,seed\n";
        for (const auto& [strategy, buckets] : groups) {
            auto ref = buckets.find(1);
            if (ref == buckets.end()) continue;
            for (const auto& [bucket, series] : buckets) {
                if (bucket == 1) continue;
                for (TestKind kind : {TestKind::VarianceDiff, TestKind::SharpeDiff}) {
                    const TestResult r = kind == TestKind::VarianceDiff
                                             ? variance_diff_test(*series, *ref->second, params)
                                             : sharpe_diff_test(*series, *ref->second, params);
                    out << strategy << ',' << bucket << ','
                        << (kind == TestKind::VarianceDiff ? "variance" : "sharpe") << ','
                        << format_sig(r.statistic) << ',' << format_sig(r.p_value) << ','
                        << r.stars << ',' << r.block_length << ',' << r.resamples << ','
                        << r.seed << '\n';
                }
            }
        }
        std::cout << "wrote " << path << '\n';
    }
    return 0;
}

int run_report_cmd(const RunConfig& config) {
    for (int ws : config.window_sizes) {
        for (StrategyId s : config.strategies) {
            const std::string base = "wealth_ws" + std::to_string(ws) + "_" + strategy_name(s);
            const std::string csv = out_path(config, base + ".csv");
            if (!fs::exists(csv))
                throw MissingInputError("missing " + csv + " (run `backtest` first)");
            write_wealth_svg(csv, out_path(config, base + ".svg"),
                             std::string(strategy_name(s)) + " wealth, ws=" + std::to_string(ws));
            std::cout << "wrote " << out_path(config, base + ".svg") << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Score-bucketed portfolio backtesting engine"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_file;
    RunConfig flags;  // flag values; merged over the config file below
    std::vector<std::string> strategy_names;

    app.add_option("--config", config_file, "flat key=value config file");
    auto* opt_returns = app.add_option("--returns", flags.returns_path, "returns CSV");
    auto* opt_scores = app.add_option("--scores", flags.scores_path, "scores CSV");
    auto* opt_caps = app.add_option("--caps", flags.caps_path, "caps CSV");
    auto* opt_k = app.add_option("--k", flags.bucket_count, "positive-score bucket count");
    auto* opt_ws = app.add_option("--ws", flags.window_sizes, "window sizes");
    auto* opt_strat = app.add_option("--strategy", strategy_names, "strategies (MV, EW, MC)");
    auto* opt_ann = app.add_option("--annualization", flags.annualization, "trading days per year");
    auto* opt_bl = app.add_option("--block-length", flags.block_length, "bootstrap block length");
    auto* opt_b = app.add_option("--resamples", flags.resamples, "bootstrap resamples");
    auto* opt_seed = app.add_option("--seed", flags.seed, "RNG seed (required for runs)");
    auto* opt_out = app.add_option("--out-dir", flags.out_dir, "output directory");
    auto* opt_ridge = app.add_option("--ridge-scale", flags.ridge_scale, "covariance ridge scale");
    auto* opt_tol = app.add_option("--tol", flags.tol, "optimizer KKT tolerance");
    auto* opt_iter = app.add_option("--max-iter", flags.max_iter, "optimizer iteration cap");
    auto* opt_threads = app.add_option("--threads", flags.threads, "worker threads");
    auto* opt_empty = app.add_flag("--allow-empty-pt1", flags.allow_empty_pt1,
                                   "permit an empty zero-score bucket");
    auto* opt_dump = app.add_flag("--dump-weights", flags.dump_weights, "write weight paths");

    auto* cmd_describe = app.add_subcommand("describe", "panel and score descriptive statistics");
    auto* cmd_bucket = app.add_subcommand("bucket", "score-quantile bucket assignment");
    auto* cmd_backtest = app.add_subcommand("backtest", "rolling out-of-sample backtest");
    auto* cmd_test = app.add_subcommand("test", "bootstrap tests vs bucket 1");
    auto* cmd_report = app.add_subcommand("report", "wealth-curve SVG charts");
    auto* cmd_all = app.add_subcommand("all", "full pipeline");

    auto* cmd_synth = app.add_subcommand("synth", "generate a synthetic dataset");
    SynthConfig synth;
    cmd_synth->add_option("--days", synth.num_days, "panel length T");
    cmd_synth->add_option("--assets", synth.num_assets, "asset count N");
    cmd_synth->add_option("--zero-assets", synth.zero_score_assets, "zero-score asset count");
    cmd_synth->add_option("--vol-slope", synth.vol_slope,
                          "idiosyncratic vol change per score point");
    cmd_synth->add_option("--idio-vol", synth.idio_vol, "idiosyncratic vol at score 0");
    cmd_synth->add_option("--factor-vol", synth.factor_vol, "common factor vol");

    try {
        app.parse(argc, argv);

        RunConfig config;
        if (!config_file.empty()) apply_config_file(config, config_file);
        if (*opt_returns) config.returns_path = flags.returns_path;
        if (*opt_scores) config.scores_path = flags.scores_path;
        if (*opt_caps) config.caps_path = flags.caps_path;
        if (*opt_k) config.bucket_count = flags.bucket_count;
        if (*opt_ws) config.window_sizes = flags.window_sizes;
        if (*opt_strat) {
            config.strategies.clear();
            for (const auto& name : strategy_names) {
                auto s = parse_strategy(name);
                if (!s) throw ConfigError("unknown strategy '" + name + "'");
                config.strategies.push_back(*s);
            }
        }
        if (*opt_ann) config.annualization = flags.annualization;
        if (*opt_bl) config.block_length = flags.block_length;
        if (*opt_b) config.resamples = flags.resamples;
        if (*opt_seed) {
            config.seed = flags.seed;
            config.seed_set = true;
        }
        if (*opt_out) config.out_dir = flags.out_dir;
        if (*opt_ridge) config.ridge_scale = flags.ridge_scale;
        if (*opt_tol) config.tol = flags.tol;
        if (*opt_iter) config.max_iter = flags.max_iter;
        if (*opt_threads) config.threads = flags.threads;
        if (*opt_empty) config.allow_empty_pt1 = flags.allow_empty_pt1;
        if (*opt_dump) config.dump_weights = flags.dump_weights;

        if (*cmd_synth) {
            if (config.seed_set) synth.seed = config.seed;
            const SynthData data = generate_synthetic(synth);
            fs::create_directories(config.out_dir);
            save_return_panel(data.returns, out_path(config, "returns.csv"));
            save_cap_panel(data.caps, out_path(config, "caps.csv"));
            std::ofstream out(out_path(config, "scores.csv"), std::ios::binary);
            out << "asset_id,score\n";
            for (Eigen::Index i = 0; i < data.scores.size(); ++i)
                out << data.scores.assets[static_cast<std::size_t>(i)] << ','
                    << format_sig(data.scores.scores[i], 12) << '\n';
            std::cout << "wrote returns.csv, caps.csv, scores.csv under " << config.out_dir
                      << '\n';
            return 0;
        }
        if (*cmd_describe) return run_describe(config);
        if (*cmd_bucket) return run_bucket(config);
        if (*cmd_backtest) return run_backtest_cmd(config);
        if (*cmd_test) {
            if (!config.seed_set) throw ConfigError("seed is required for reproducibility");
            return run_test_cmd(config);
        }
        if (*cmd_report) return run_report_cmd(config);
        if (*cmd_all) {
            const auto written = run_pipeline(config);
            for (const auto& f : written) std::cout << "wrote " << f << '\n';
            return 0;
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << '\n';
        return 1;
    }
}
