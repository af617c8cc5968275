#include "folio/optimizer.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>

#include "folio/errors.hpp"

namespace folio {

namespace {

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& idx) {
    const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd out(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) out(i, j) = m(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    return out;
}

bool valid_warm_start(const Eigen::VectorXd* w, Eigen::Index n) {
    if (!w || w->size() != n || !w->allFinite()) return false;
    if (w->minCoeff() < -1e-12) return false;
    return std::abs(w->sum() - 1.0) <= 1e-8;
}

}  // namespace

double kkt_residual(const Eigen::Ref<const Eigen::MatrixXd>& sigma,
                    const Eigen::Ref<const Eigen::VectorXd>& w) {
    const Eigen::VectorXd g = sigma * w;
    const double lambda = w.dot(g);
    double res = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w[i] > 0.0)
            res = std::max(res, std::abs(g[i] - lambda));
        else
            res = std::max(res, std::max(0.0, lambda - g[i]));
    }
    return res;
}

std::pair<WeightVector, SolveDiagnostics> solve_min_variance(const CovarianceMatrix& sigma,
                                                             const MinVarOptions& opts) {
    const Eigen::MatrixXd& S = sigma.values;
    const Eigen::Index n = S.rows();
    if (n < 1 || S.cols() != n) throw BadInputError("covariance matrix is empty or non-square");
    if ((S - S.transpose()).cwiseAbs().maxCoeff() >
        1e-12 * std::max(1.0, S.cwiseAbs().maxCoeff()))
        throw BadInputError("covariance matrix is not symmetric");
    if (!is_positive_definite(S)) throw BadInputError("covariance matrix is not positive definite");

    WeightVector result;
    result.assets = sigma.assets;
    SolveDiagnostics diag;

    if (n == 1) {
        result.weights = Eigen::VectorXd::Ones(1);
        diag.objective = S(0, 0);
        return {std::move(result), diag};
    }

    Eigen::VectorXd w;
    if (valid_warm_start(opts.warm_start, n))
        w = opts.warm_start->cwiseMax(0.0) / opts.warm_start->cwiseMax(0.0).sum();
    else
        w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));

    std::vector<bool> free(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) free[static_cast<std::size_t>(i)] = w[i] > 0.0;

    // Primal active set: repeatedly solve the equality-constrained problem on
    // the free set, step with a ratio test when the unconstrained solution
    // leaves the box, and grow the free set from KKT violations.
    int iter = 0;
    for (; iter < opts.max_iter; ++iter) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 0; i < n; ++i)
            if (free[static_cast<std::size_t>(i)]) idx.push_back(i);
        if (idx.empty()) {  // cannot happen for a feasible w, but recover anyway
            for (Eigen::Index i = 0; i < n; ++i) free[static_cast<std::size_t>(i)] = true;
            w.setConstant(1.0 / static_cast<double>(n));
            continue;
        }

        const Eigen::MatrixXd Sff = submatrix(S, idx);
        Eigen::LLT<Eigen::MatrixXd> llt(Sff);
        if (llt.info() != Eigen::Success)
            throw BadInputError("covariance submatrix failed Cholesky factorization");
        const Eigen::VectorXd x = llt.solve(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(idx.size())));
        Eigen::VectorXd wstar = Eigen::VectorXd::Zero(n);
        const double xsum = x.sum();
        for (std::size_t j = 0; j < idx.size(); ++j) wstar[idx[j]] = x[static_cast<Eigen::Index>(j)] / xsum;

        double min_free = 0.0;
        for (Eigen::Index i : idx) min_free = std::min(min_free, wstar[i]);

        if (min_free >= 0.0) {
            w = wstar;
            const Eigen::VectorXd g = S * w;
            const double lambda = w.dot(g);
            double res = 0.0;
            Eigen::Index entering = -1;
            double worst = -std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < n; ++i) {
                if (free[static_cast<std::size_t>(i)] && w[i] > 0.0) {
                    res = std::max(res, std::abs(g[i] - lambda));
                } else {
                    const double viol = lambda - g[i];
                    res = std::max(res, std::max(0.0, viol));
                    if (viol > worst) {
                        worst = viol;
                        entering = i;
                    }
                }
            }
            if (res <= opts.tol || entering < 0 || worst <= 0.0) {
                diag.iterations = iter + 1;
                diag.kkt_residual = res;
                diag.status = res <= opts.tol ? SolveStatus::Optimal : SolveStatus::MaxIterations;
                break;
            }
            free[static_cast<std::size_t>(entering)] = true;
        } else {
            // ratio test toward wstar, drop the blocking coordinate
            double alpha = 1.0;
            Eigen::Index blocking = -1;
            for (Eigen::Index i : idx) {
                if (wstar[i] < 0.0 && w[i] > wstar[i]) {
                    const double a = w[i] / (w[i] - wstar[i]);
                    if (a < alpha) {
                        alpha = a;
                        blocking = i;
                    }
                }
            }
            w = w + alpha * (wstar - w);
            if (blocking >= 0) {
                w[blocking] = 0.0;
                free[static_cast<std::size_t>(blocking)] = false;
            }
        }
    }

    if (iter >= opts.max_iter) {
        diag.iterations = iter;
        diag.status = SolveStatus::MaxIterations;
    }

    // feasibility is unconditional, even on MaxIterations
    w = w.cwiseMax(0.0);
    w /= w.sum();
    diag.kkt_residual = kkt_residual(S, w);
    if (diag.status != SolveStatus::MaxIterations)
        diag.status = diag.kkt_residual <= opts.tol ? SolveStatus::Optimal : SolveStatus::MaxIterations;
    diag.objective = w.dot(S * w);
    result.weights = std::move(w);
    return {std::move(result), diag};
}

}  // namespace folio
