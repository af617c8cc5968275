#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace folio {

// Sample covariance of a return window, regularized just enough to be
// positive definite (certified by a successful Cholesky factorization).
struct CovarianceMatrix {
    std::vector<std::string> assets;  // optional labels, may be empty
    Eigen::MatrixXd values;           // n x n, symmetric
    double regularization = 0.0;      // ridge actually added to the diagonal

    Eigen::Index size() const { return values.rows(); }
};

// Two-pass sample covariance with denominator T_w-1. If the Cholesky
// certificate fails at ridge 0, adds delta*I with
// delta = ridge_scale * trace(S)/n, escalating delta by x10 until the
// certificate passes (at most 8 escalations, then NotPositiveDefinite).
// Throws DegenerateWindow when trace(S) <= 0 (all-constant window).
CovarianceMatrix estimate_covariance(const Eigen::Ref<const Eigen::MatrixXd>& window,
                                     double ridge_scale = 1e-8,
                                     std::vector<std::string> assets = {});

// True when the matrix admits a Cholesky factorization with a strictly
// positive diagonal.
bool is_positive_definite(const Eigen::Ref<const Eigen::MatrixXd>& m);

}  // namespace folio
