#include "folio/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "folio/errors.hpp"
#include "folio/util.hpp"

namespace folio {

double oos_mean(const Eigen::Ref<const Eigen::VectorXd>& series) {
    if (series.size() < 1) throw EmptySeriesError("mean of an empty series");
    return kahan_sum(series) / static_cast<double>(series.size());
}

double oos_variance(const Eigen::Ref<const Eigen::VectorXd>& series) {
    const Eigen::Index M = series.size();
    if (M < 2) throw TooShortError("variance needs M >= 2");
    const double mu = oos_mean(series);
    const Eigen::VectorXd dev2 = (series.array() - mu).square().matrix();
    return kahan_sum(dev2) / static_cast<double>(M - 1);
}

double sharpe(const Eigen::Ref<const Eigen::VectorXd>& series) {
    const double v = oos_variance(series);
    if (!(v > 0.0)) throw ZeroVarianceError("Sharpe ratio undefined for zero variance");
    return oos_mean(series) / std::sqrt(v);
}

double var95(const Eigen::Ref<const Eigen::VectorXd>& series) {
    const Eigen::Index M = series.size();
    if (M < 20) throw TooShortError("var95 needs M >= 20");
    std::vector<double> sorted(series.data(), series.data() + M);
    std::sort(sorted.begin(), sorted.end());
    // 1-based position h = (M-1)*0.05 + 1, linear interpolation
    const double pos = static_cast<double>(M - 1) * 0.05;
    const auto lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

Eigen::VectorXd wealth_curve(const Eigen::Ref<const Eigen::VectorXd>& series) {
    Eigen::VectorXd wealth(series.size());
    double w = 1.0;
    for (Eigen::Index i = 0; i < series.size(); ++i) {
        if (series[i] <= -1.0)
            throw TotalLossError("return <= -100% at step " + std::to_string(i));
        w *= 1.0 + series[i];
        wealth[i] = w;
    }
    return wealth;
}

PerformanceReport performance_report(const Eigen::Ref<const Eigen::VectorXd>& series,
                                     int annualization) {
    if (annualization < 1) throw OutOfRangeError("annualization must be >= 1");
    PerformanceReport r;
    r.M = series.size();
    r.mean_daily = oos_mean(series);
    r.variance_daily = oos_variance(series);
    r.mean_annualized = static_cast<double>(annualization) * r.mean_daily;
    r.variance_annualized = static_cast<double>(annualization) * r.variance_daily;
    r.sd_annualized = std::sqrt(r.variance_annualized);
    r.sharpe_daily = r.variance_daily > 0.0
                         ? r.mean_daily / std::sqrt(r.variance_daily)
                         : 0.0;
    r.var95 = var95(series);
    return r;
}

}  // namespace folio
