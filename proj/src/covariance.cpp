#include "folio/covariance.hpp"

#include <Eigen/Cholesky>

#include "folio/errors.hpp"
#include "folio/report.hpp"

namespace folio {

bool is_positive_definite(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    if (m.rows() != m.cols() || m.rows() == 0 || !m.allFinite()) return false;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) return false;
    // Eigen's LLT can report success on a PSD boundary case; require a
    // strictly positive factor diagonal.
    return (llt.matrixLLT().diagonal().array() > 0.0).all();
}

CovarianceMatrix estimate_covariance(const Eigen::Ref<const Eigen::MatrixXd>& window,
                                     double ridge_scale, std::vector<std::string> assets) {
    const Eigen::Index tw = window.rows();
    const Eigen::Index n = window.cols();
    if (tw < 2) throw BadInputError("covariance window needs at least 2 rows");
    if (n < 1) throw BadInputError("covariance window needs at least 1 column");
    if (!window.allFinite()) throw BadInputError("covariance window has non-finite values");

    const Eigen::RowVectorXd mean = window.colwise().mean();
    const Eigen::MatrixXd centered = window.rowwise() - mean;
    Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(tw - 1);
    cov = 0.5 * (cov + cov.transpose());  // enforce exact symmetry

    const double tr = cov.trace();
    if (!(tr > 0.0)) throw DegenerateWindowError("all-constant window, trace(S) <= 0");

    CovarianceMatrix out;
    out.assets = std::move(assets);
    out.regularization = 0.0;
    if (is_positive_definite(cov)) {
        out.values = std::move(cov);
        return out;
    }

    double delta = ridge_scale * tr / static_cast<double>(n);
    for (int attempt = 0; attempt <= 8; ++attempt) {
        Eigen::MatrixXd reg = cov + delta * Eigen::MatrixXd::Identity(n, n);
        if (delta > 0.0 && is_positive_definite(reg)) {
            out.values = std::move(reg);
            out.regularization = delta;
            return out;
        }
        delta *= 10.0;
    }
    throw NotPositiveDefiniteError("ridge escalation exhausted (last delta " +
                                   format_sig(delta) + ")");
}

}  // namespace folio
