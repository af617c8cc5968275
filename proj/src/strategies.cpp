#include "folio/strategies.hpp"

#include "folio/covariance.hpp"
#include "folio/errors.hpp"
#include "folio/util.hpp"

namespace folio {

const char* strategy_name(StrategyId id) {
    switch (id) {
        case StrategyId::MinimumVariance: return "MV";
        case StrategyId::EquallyWeighted: return "EW";
        case StrategyId::MarketCapWeighted: return "MC";
    }
    return "?";
}

std::optional<StrategyId> parse_strategy(const std::string& name) {
    if (name == "MV") return StrategyId::MinimumVariance;
    if (name == "EW") return StrategyId::EquallyWeighted;
    if (name == "MC") return StrategyId::MarketCapWeighted;
    return std::nullopt;
}

WeightVector ew_weights(Eigen::Index n) {
    if (n < 1) throw BadInputError("ew_weights needs n >= 1");
    WeightVector w;
    w.weights = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    // pin the sum to exactly 1
    w.weights[n - 1] += 1.0 - kahan_sum(w.weights);
    return w;
}

WeightVector mc_weights(const Eigen::Ref<const Eigen::VectorXd>& caps) {
    if (caps.size() < 1) throw BadInputError("mc_weights needs n >= 1");
    if (!caps.allFinite() || (caps.array() <= 0.0).any())
        throw NonPositiveCapError("market caps must be strictly positive and finite");
    WeightVector w;
    w.weights = caps / caps.sum();
    return w;
}

StrategyOutput strategy_weights(StrategyId id,
                                const Eigen::Ref<const Eigen::MatrixXd>& window,
                                const Eigen::Ref<const Eigen::VectorXd>& caps_row,
                                const StrategyOptions& opts) {
    StrategyOutput out;
    switch (id) {
        case StrategyId::EquallyWeighted:
            out.weights = ew_weights(window.cols());
            break;
        case StrategyId::MarketCapWeighted:
            out.weights = mc_weights(caps_row);
            break;
        case StrategyId::MinimumVariance: {
            const CovarianceMatrix sigma = estimate_covariance(window, opts.ridge_scale);
            MinVarOptions mv;
            mv.tol = opts.tol;
            mv.max_iter = opts.max_iter;
            mv.warm_start = opts.warm_start;
            auto [w, diag] = solve_min_variance(sigma, mv);
            out.weights = std::move(w);
            out.diagnostics = diag;
            break;
        }
    }
    return out;
}

}  // namespace folio
