#pragma once

#include <Eigen/Dense>

namespace folio {

struct PerformanceReport {
    double mean_daily = 0.0;
    double variance_daily = 0.0;
    double mean_annualized = 0.0;
    double variance_annualized = 0.0;
    double sd_annualized = 0.0;
    double sharpe_daily = 0.0;   // mean/sd on daily quantities, rf = 0
    double var95 = 0.0;          // empirical 5th percentile of daily returns
    Eigen::Index M = 0;
};

// Compensated-summation sample mean; M >= 1.
double oos_mean(const Eigen::Ref<const Eigen::VectorXd>& series);

// Two-pass sample variance with denominator M-1; M >= 2.
double oos_variance(const Eigen::Ref<const Eigen::VectorXd>& series);

// oos_mean / sqrt(oos_variance); requires positive variance.
double sharpe(const Eigen::Ref<const Eigen::VectorXd>& series);

// Empirical 5th percentile by linear interpolation between order statistics
// at 1-based position h = (M-1)*0.05 + 1; M >= 20.
double var95(const Eigen::Ref<const Eigen::VectorXd>& series);

// Cumulative product of (1 + r_t), start value 1.0 not included, length M.
// Requires every return > -1.
Eigen::VectorXd wealth_curve(const Eigen::Ref<const Eigen::VectorXd>& series);

// All of the above plus annualization (mean * a, variance * a).
PerformanceReport performance_report(const Eigen::Ref<const Eigen::VectorXd>& series,
                                     int annualization);

}  // namespace folio
