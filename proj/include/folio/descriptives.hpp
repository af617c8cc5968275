#pragma once

#include <Eigen/Dense>

#include "folio/panel.hpp"

namespace folio {

// Cross-asset averages of per-asset return statistics. Skewness and excess
// kurtosis use the uncorrected moment estimators (m3/m2^1.5, m4/m2^2 - 3);
// assets with zero second moment are excluded from those two averages
// (skew_kurt_assets counts the assets that contributed). When no asset
// contributes, skewness and excess_kurtosis are NaN.
struct PanelDescriptives {
    Eigen::Index num_days = 0;
    Eigen::Index num_assets = 0;
    double mean_annualized = 0.0;
    double sd_annualized = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    Eigen::Index skew_kurt_assets = 0;
};

// Requires T >= 4. Annualized mean is (sample mean) * annualization,
// annualized sd is (sample sd, T-1 denominator) * sqrt(annualization).
PanelDescriptives compute_descriptives(const ReturnPanel& panel, int annualization);

// Mean / sd / skew / excess kurtosis of a raw score vector (no
// annualization); used for the score-summary output.
struct ScoreDescriptives {
    double mean = 0.0;
    double sd = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};
ScoreDescriptives compute_score_descriptives(const ScoreVector& scores);

}  // namespace folio
