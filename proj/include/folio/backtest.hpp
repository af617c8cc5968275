#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "folio/bucketing.hpp"
#include "folio/panel.hpp"
#include "folio/strategies.hpp"

namespace folio {

struct BacktestConfig {
    int window_size = 170;  // ws; 2 <= ws < T
    std::vector<StrategyId> strategies = {StrategyId::MinimumVariance,
                                          StrategyId::EquallyWeighted,
                                          StrategyId::MarketCapWeighted};
    BucketAssignment buckets;
    int annualization = 252;
    double tol = 1e-8;
    int max_iter = 10000;
    double ridge_scale = 1e-8;
    // MV solves reuse the previous day's weights as a warm start; results
    // must agree with cold starts within optimizer tolerance.
    bool warm_start = true;
    int threads = 1;
};

// Out-of-sample result for one (bucket, strategy) pair.
struct PairResult {
    int bucket_id = 0;
    StrategyId strategy = StrategyId::EquallyWeighted;
    std::vector<std::string> assets;   // the bucket's assets (weight columns)
    Eigen::VectorXd oos_returns;       // length M
    Eigen::MatrixXd weight_path;       // M x n_bucket
    int not_converged_days = 0;        // MV days that hit max_iter
};

struct BacktestResult {
    Eigen::Index M = 0;                // = T - ws
    std::vector<std::string> oos_dates;  // dates of the realized returns, length M
    std::vector<PairResult> pairs;     // empty buckets are skipped

    const PairResult* find(int bucket_id, StrategyId strategy) const;
};

// Rolling one-day-hold protocol: for each window ending at day t, fit
// weights on the last ws rows restricted to the bucket's assets and realize
// w' r_{t+1}; advance one day until the series is exhausted. Produces
// exactly M = T - ws returns per pair.
BacktestResult run_rolling_backtest(const ReturnPanel& panel, const CapPanel& caps,
                                    const BacktestConfig& config);

}  // namespace folio
