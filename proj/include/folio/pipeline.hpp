#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "folio/inference.hpp"
#include "folio/strategies.hpp"

namespace folio {

// Full-run configuration; file values come from a flat key=value config,
// CLI flags override.
struct RunConfig {
    std::string returns_path;
    std::string scores_path;
    std::string caps_path;
    int bucket_count = 6;                          // k; buckets = k+1
    std::vector<int> window_sizes = {430, 250, 170, 84};
    std::vector<StrategyId> strategies = {StrategyId::MinimumVariance,
                                          StrategyId::EquallyWeighted,
                                          StrategyId::MarketCapWeighted};
    int annualization = 252;
    int block_length = 5;
    int resamples = 4999;
    std::uint64_t seed = 0;
    bool seed_set = false;                          // seed is mandatory
    std::string out_dir = ".";
    bool allow_empty_pt1 = false;
    bool dump_weights = false;
    double ridge_scale = 1e-8;
    double tol = 1e-8;
    int max_iter = 10000;
    int threads = 1;                                // FOLIO_THREADS overrides
};

// Parses `key=value` lines into config fields; '#' starts a comment.
// Unknown keys are a ConfigError.
void apply_config_file(RunConfig& config, const std::string& path);

// Throws ConfigError on invalid values (missing seed, ws < 2, k < 1, ...).
void validate_run_config(const RunConfig& config);

// Ingest -> bucket -> backtest -> metrics -> tests -> CSVs, for every
// window size. Writes metrics_ws<ws>.csv, wealth_ws<ws>_<strategy>.csv,
// buckets.csv, bucket_summary.csv, descriptives.csv and run_manifest.json
// under config.out_dir. Returns the list of files written.
std::vector<std::string> run_pipeline(const RunConfig& config);

}  // namespace folio
