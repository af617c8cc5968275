#pragma once

#include <cstdint>
#include <string>

#include "folio/panel.hpp"

namespace folio {

// Synthetic market generator: a one-factor return model with per-asset
// idiosyncratic volatility, strictly positive caps, and scores with a
// zero-score group. When vol_slope != 0 the idiosyncratic volatility is
// tied to the score (negative slope plants lower vol for higher scores).
struct SynthConfig {
    Eigen::Index num_days = 800;
    Eigen::Index num_assets = 70;
    Eigen::Index zero_score_assets = 10;
    std::uint64_t seed = 1;
    double drift = 0.0002;          // daily mean return
    double factor_vol = 0.008;      // common factor volatility
    double idio_vol = 0.012;        // idiosyncratic volatility at score 0
    double vol_slope = 0.0;         // added vol per score point (can be < 0)
    std::string start_date = "2000-01-03";
};

struct SynthData {
    ReturnPanel returns;
    CapPanel caps;
    ScoreVector scores;
};

SynthData generate_synthetic(const SynthConfig& config);

// Weekday sequence of ISO dates starting at `start` (itself included if a
// weekday), length n.
std::vector<std::string> business_dates(const std::string& start, Eigen::Index n);

}  // namespace folio
