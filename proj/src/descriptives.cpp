#include "folio/descriptives.hpp"

#include <cmath>
#include <limits>

#include "folio/errors.hpp"
#include "folio/util.hpp"

namespace folio {

namespace {

struct MomentStats {
    double mean = 0.0;
    double sd = 0.0;        // T-1 denominator
    double skew = 0.0;      // m3 / m2^1.5
    double ex_kurt = 0.0;   // m4 / m2^2 - 3
    bool shape_defined = false;
};

MomentStats column_moments(const Eigen::Ref<const Eigen::VectorXd>& x) {
    const Eigen::Index T = x.size();
    MomentStats s;
    s.mean = kahan_sum(x) / static_cast<double>(T);
    const Eigen::ArrayXd d = x.array() - s.mean;
    const double m2 = d.square().sum() / static_cast<double>(T);
    const double ss = d.square().sum();
    s.sd = T > 1 ? std::sqrt(ss / static_cast<double>(T - 1)) : 0.0;
    if (m2 > 0.0) {
        const double m3 = d.cube().sum() / static_cast<double>(T);
        const double m4 = d.square().square().sum() / static_cast<double>(T);
        s.skew = m3 / std::pow(m2, 1.5);
        s.ex_kurt = m4 / (m2 * m2) - 3.0;
        s.shape_defined = true;
    }
    return s;
}

}  // namespace

PanelDescriptives compute_descriptives(const ReturnPanel& panel, int annualization) {
    const Eigen::Index T = panel.num_days();
    const Eigen::Index N = panel.num_assets();
    if (T < 4) throw TooShortError("descriptives need T >= 4, got " + std::to_string(T));
    if (annualization < 1) throw OutOfRangeError("annualization must be >= 1");

    PanelDescriptives out;
    out.num_days = T;
    out.num_assets = N;
    double mean_sum = 0.0, sd_sum = 0.0, skew_sum = 0.0, kurt_sum = 0.0;
    Eigen::Index defined = 0;
    for (Eigen::Index c = 0; c < N; ++c) {
        const MomentStats s = column_moments(panel.values.col(c));
        mean_sum += s.mean * static_cast<double>(annualization);
        sd_sum += s.sd * std::sqrt(static_cast<double>(annualization));
        if (s.shape_defined) {
            skew_sum += s.skew;
            kurt_sum += s.ex_kurt;
            ++defined;
        }
    }
    out.mean_annualized = mean_sum / static_cast<double>(N);
    out.sd_annualized = sd_sum / static_cast<double>(N);
    out.skew_kurt_assets = defined;
    if (defined > 0) {
        out.skewness = skew_sum / static_cast<double>(defined);
        out.excess_kurtosis = kurt_sum / static_cast<double>(defined);
    } else {
        out.skewness = std::numeric_limits<double>::quiet_NaN();
        out.excess_kurtosis = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

ScoreDescriptives compute_score_descriptives(const ScoreVector& scores) {
    if (scores.size() < 2) throw TooShortError("score descriptives need at least 2 assets");
    const MomentStats s = column_moments(scores.scores);
    ScoreDescriptives out;
    out.mean = s.mean;
    out.sd = s.sd;
    out.skewness = s.shape_defined ? s.skew : std::numeric_limits<double>::quiet_NaN();
    out.excess_kurtosis = s.shape_defined ? s.ex_kurt : std::numeric_limits<double>::quiet_NaN();
    return out;
}

}  // namespace folio
