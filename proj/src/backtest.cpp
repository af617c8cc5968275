#include "folio/backtest.hpp"

#include <unordered_map>

#include "folio/errors.hpp"
#include "folio/util.hpp"

namespace folio {

const PairResult* BacktestResult::find(int bucket_id, StrategyId strategy) const {
    for (const auto& p : pairs)
        if (p.bucket_id == bucket_id && p.strategy == strategy) return &p;
    return nullptr;
}

namespace {

std::vector<Eigen::Index> column_indices(const ReturnPanel& panel,
                                         const std::vector<std::string>& assets) {
    std::unordered_map<std::string, Eigen::Index> pos;
    for (std::size_t i = 0; i < panel.assets.size(); ++i)
        pos[panel.assets[i]] = static_cast<Eigen::Index>(i);
    std::vector<Eigen::Index> idx;
    idx.reserve(assets.size());
    for (const auto& a : assets) {
        auto it = pos.find(a);
        if (it == pos.end())
            throw PanelMismatchError("bucket asset '" + a + "' not in return panel");
        idx.push_back(it->second);
    }
    return idx;
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& idx) {
    Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = m.col(idx[j]);
    return out;
}

PairResult run_pair(const Eigen::MatrixXd& returns, const Eigen::MatrixXd& caps,
                    const std::vector<std::string>& dates,
                    const BucketAssignment::Bucket& bucket, StrategyId strategy,
                    const BacktestConfig& config) {
    const Eigen::Index T = returns.rows();
    const Eigen::Index n = returns.cols();
    const Eigen::Index ws = config.window_size;
    const Eigen::Index M = T - ws;

    PairResult pair;
    pair.bucket_id = bucket.id;
    pair.strategy = strategy;
    pair.assets = bucket.assets;
    pair.oos_returns.resize(M);
    pair.weight_path.resize(M, n);

    StrategyOptions opts;
    opts.ridge_scale = config.ridge_scale;
    opts.tol = config.tol;
    opts.max_iter = config.max_iter;

    Eigen::VectorXd previous;
    for (Eigen::Index step = 0; step < M; ++step) {
        const Eigen::Index window_end = ws - 1 + step;  // last in-window row
        const auto window = returns.middleRows(step, ws);
        const auto caps_row = caps.row(window_end).transpose();
        opts.warm_start =
            (strategy == StrategyId::MinimumVariance && config.warm_start && step > 0)
                ? &previous
                : nullptr;
        StrategyOutput fit;
        try {
            fit = strategy_weights(strategy, window, caps_row, opts);
        } catch (const Error& e) {
            throw NumericalError("bucket " + std::to_string(bucket.id) + ", strategy " +
                                 strategy_name(strategy) + ", date " +
                                 dates[static_cast<std::size_t>(window_end)] + ": " + e.what());
        }
        if (strategy == StrategyId::MinimumVariance) {
            if (fit.diagnostics.status == SolveStatus::MaxIterations) ++pair.not_converged_days;
            previous = fit.weights.weights;
        }
        pair.weight_path.row(step) = fit.weights.weights.transpose();
        pair.oos_returns[step] = fit.weights.weights.dot(returns.row(window_end + 1).transpose());
    }
    (void)n;
    return pair;
}

}  // namespace

BacktestResult run_rolling_backtest(const ReturnPanel& panel, const CapPanel& caps,
                                    const BacktestConfig& config) {
    const Eigen::Index T = panel.num_days();
    if (config.window_size < 2)
        throw ConfigError("window size must be >= 2, got " + std::to_string(config.window_size));
    if (config.window_size >= T)
        throw WindowTooLongError("window size " + std::to_string(config.window_size) +
                                 " >= T = " + std::to_string(T));
    validate_cap_panel(caps, panel);
    if (config.strategies.empty()) throw ConfigError("no strategies configured");

    BacktestResult result;
    result.M = T - config.window_size;
    result.oos_dates.assign(panel.dates.begin() + config.window_size, panel.dates.end());

    // materialize per-bucket column slices once, shared across strategies
    std::vector<std::pair<const BucketAssignment::Bucket*, std::pair<Eigen::MatrixXd, Eigen::MatrixXd>>>
        bucket_data;
    for (const auto& bucket : config.buckets.buckets) {
        if (bucket.assets.empty()) continue;  // allow_empty_pt1
        const auto idx = column_indices(panel, bucket.assets);
        bucket_data.emplace_back(&bucket, std::make_pair(select_columns(panel.values, idx),
                                                         select_columns(caps.values, idx)));
    }

    std::vector<std::pair<std::size_t, StrategyId>> tasks;
    for (std::size_t b = 0; b < bucket_data.size(); ++b)
        for (StrategyId s : config.strategies) tasks.emplace_back(b, s);

    result.pairs.resize(tasks.size());
    const int threads = resolve_threads(config.threads);
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        const auto& [b, strategy] = tasks[i];
        const auto& [bucket, data] = bucket_data[b];
        result.pairs[i] = run_pair(data.first, data.second, panel.dates, *bucket, strategy, config);
    });
    return result;
}

}  // namespace folio
