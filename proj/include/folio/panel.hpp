#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace folio {

// T x N panel of daily simple returns with a date axis and asset identifiers.
// Dates are ISO-8601 strings, strictly increasing; the panel is complete
// (no missing cells, all values finite).
struct ReturnPanel {
    std::vector<std::string> dates;   // length T
    std::vector<std::string> assets;  // length N
    Eigen::MatrixXd values;           // T x N, simple returns (0.01 = +1%)

    Eigen::Index num_days() const { return values.rows(); }
    Eigen::Index num_assets() const { return values.cols(); }
};

// Same shape as ReturnPanel; values are market capitalizations (> 0).
struct CapPanel {
    std::vector<std::string> dates;
    std::vector<std::string> assets;
    Eigen::MatrixXd values;

    Eigen::Index num_days() const { return values.rows(); }
    Eigen::Index num_assets() const { return values.cols(); }
};

// One score per asset in [0, 100]; aligned to a ReturnPanel's asset order.
struct ScoreVector {
    std::vector<std::string> assets;
    Eigen::VectorXd scores;

    Eigen::Index size() const { return scores.size(); }
};

// Throws if any ReturnPanel invariant is violated.
void validate_return_panel(const ReturnPanel& panel);

// Throws if caps are not aligned with the panel or not strictly positive.
void validate_cap_panel(const CapPanel& caps, const ReturnPanel& panel);

}  // namespace folio
