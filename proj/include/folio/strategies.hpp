#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "folio/optimizer.hpp"

namespace folio {

enum class StrategyId { MinimumVariance, EquallyWeighted, MarketCapWeighted };

const char* strategy_name(StrategyId id);                 // "MV", "EW", "MC"
std::optional<StrategyId> parse_strategy(const std::string& name);

// Equal capital allocation; weights sum to 1 exactly.
WeightVector ew_weights(Eigen::Index n);

// Weights proportional to the given market caps (all strictly positive).
WeightVector mc_weights(const Eigen::Ref<const Eigen::VectorXd>& caps);

struct StrategyOptions {
    double ridge_scale = 1e-8;
    double tol = 1e-8;
    int max_iter = 10000;
    const Eigen::VectorXd* warm_start = nullptr;  // MV only
};

struct StrategyOutput {
    WeightVector weights;
    SolveDiagnostics diagnostics;  // meaningful for MV only
};

// Dispatches to MV (estimate_covariance then solve_min_variance), EW, or
// MC. `caps_row` is the cap cross-section at the last in-window date and is
// only consulted by MC; `window` only by MV.
StrategyOutput strategy_weights(StrategyId id,
                                const Eigen::Ref<const Eigen::MatrixXd>& window,
                                const Eigen::Ref<const Eigen::VectorXd>& caps_row,
                                const StrategyOptions& opts = {});

}  // namespace folio
