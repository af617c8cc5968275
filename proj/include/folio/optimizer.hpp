#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "folio/covariance.hpp"

namespace folio {

// Long-only portfolio weights: nonnegative, summing to 1.
struct WeightVector {
    std::vector<std::string> assets;  // optional labels
    Eigen::VectorXd weights;

    Eigen::Index size() const { return weights.size(); }
};

enum class SolveStatus { Optimal, MaxIterations };

struct SolveDiagnostics {
    int iterations = 0;
    double kkt_residual = 0.0;
    double objective = 0.0;  // w' Sigma w
    SolveStatus status = SolveStatus::Optimal;
};

struct MinVarOptions {
    double tol = 1e-8;    // KKT residual target
    int max_iter = 10000;
    // Optional warm start; must be a valid simplex vector of matching size.
    const Eigen::VectorXd* warm_start = nullptr;
};

// Solves min w' Sigma w  s.t.  1'w = 1, w >= 0 with a primal active-set
// method (the upper bound w <= 1 is implied by the simplex). Sigma must be
// positive definite (re-certified here; BadInput otherwise). On
// MaxIterations the returned weights are still feasible and diagnostics
// carry the achieved residual.
std::pair<WeightVector, SolveDiagnostics> solve_min_variance(
    const CovarianceMatrix& sigma, const MinVarOptions& opts = {});

// KKT residual of a feasible point: with g = Sigma*w and lambda = w'g,
// max over |g_i - lambda| on the support and max(0, lambda - g_i) off it.
double kkt_residual(const Eigen::Ref<const Eigen::MatrixXd>& sigma,
                    const Eigen::Ref<const Eigen::VectorXd>& w);

}  // namespace folio
