#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "folio/backtest.hpp"
#include "folio/descriptives.hpp"
#include "folio/inference.hpp"
#include "folio/metrics.hpp"

namespace folio {

// One row of the per-window result table: annualized variance and mean,
// daily Sharpe, VaR 95%, significance stars vs bucket 1, and the per-block
// "lowest variance" / "highest Sharpe" markers.
struct ResultRow {
    StrategyId strategy = StrategyId::MinimumVariance;
    int bucket_id = 0;
    double variance_annualized = 0.0;
    double mean_annualized = 0.0;
    double sharpe_daily = 0.0;
    double var95 = 0.0;
    std::string variance_stars;  // empty for bucket 1 (the reference)
    std::string sharpe_stars;
    bool is_min_variance = false;
    bool is_max_sharpe = false;
    Eigen::Index M = 0;
};

struct ResultTable {
    int window_size = 0;
    std::vector<ResultRow> rows;  // grouped by strategy, bucket ascending
};

// Builds the table from a backtest: per-pair performance metrics plus
// pairwise bootstrap tests of buckets >= 2 against bucket 1. Within each
// strategy block exactly one row carries each bold marker (ties to the
// lowest bucket id).
ResultTable build_result_table(const BacktestResult& backtest, int window_size,
                               int annualization, const BootstrapParams& bootstrap);

// CSV emitters. Numeric cells use 6 significant digits.
void write_metrics_csv(const ResultTable& table, const std::string& path);
void write_wealth_csv(const BacktestResult& backtest, StrategyId strategy,
                      const std::string& path);  // M+1 rows, initial 1.0
void write_buckets_csv(const BucketAssignment& assignment, const ScoreVector& scores,
                       const std::string& path);
void write_bucket_summary_csv(const BucketAssignment& assignment, const std::string& path);
void write_descriptives_csv(const PanelDescriptives& desc, const ScoreDescriptives& score_desc,
                            int annualization, const std::string& path);
void write_weight_path_csv(const BacktestResult& backtest, const PairResult& pair,
                           const std::string& path);

// Static SVG line chart of a wealth CSV: one polyline per bucket, legend by
// bucket id. Empty buckets are absent from the input and thus the legend.
void write_wealth_svg(const std::string& wealth_csv_path, const std::string& svg_path,
                      const std::string& title);

// value -> shortest decimal with `digits` significant digits
std::string format_sig(double value, int digits = 6);

// FNV-1a 64-bit content hash, hex-encoded; used for the run manifest.
std::string hash_file(const std::string& path);

}  // namespace folio
