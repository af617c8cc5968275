#include "folio/inference.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "folio/errors.hpp"
#include "folio/rng.hpp"
#include "folio/util.hpp"

namespace folio {

std::string star_annotation(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw OutOfRangeError("p-value outside [0,1]");
    if (p <= 0.01) return "***";
    if (p <= 0.05) return "**";
    if (p <= 0.10) return "*";
    return "";
}

namespace {

// Means of the joint moment conditions (a_t, b_t, a_t^2, b_t^2).
struct Moments {
    double ma, mb, ga, gb;
    double s2a() const { return ga - ma * ma; }
    double s2b() const { return gb - mb * mb; }
};

Moments compute_moments(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const double M = static_cast<double>(a.size());
    Moments m;
    m.ma = kahan_sum(a) / M;
    m.mb = kahan_sum(b) / M;
    m.ga = kahan_sum(a.array().square().matrix()) / M;
    m.gb = kahan_sum(b.array().square().matrix()) / M;
    return m;
}

double sharpe_delta(const Moments& m) {
    return m.ma / std::sqrt(m.s2a()) - m.mb / std::sqrt(m.s2b());
}

Eigen::Vector4d sharpe_gradient(const Moments& m) {
    const double sa3 = std::pow(m.s2a(), 1.5);
    const double sb3 = std::pow(m.s2b(), 1.5);
    // d(mu/s)/dmu = gamma/s^3, d(mu/s)/dgamma = -mu/(2 s^3)
    return {m.ga / sa3, -m.gb / sb3, -m.ma / (2.0 * sa3), m.mb / (2.0 * sb3)};
}

double logvar_delta(const Moments& m) { return std::log(m.s2a()) - std::log(m.s2b()); }

Eigen::Vector4d logvar_gradient(const Moments& m) {
    return {-2.0 * m.ma / m.s2a(), 2.0 * m.mb / m.s2b(), 1.0 / m.s2a(), -1.0 / m.s2b()};
}

// Bartlett-kernel HAC covariance of the moment conditions, bandwidth L:
// Psi = Gamma_0 + sum_{j=1..L} (1 - j/(L+1)) (Gamma_j + Gamma_j').
Eigen::Matrix4d hac_psi(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Moments& m,
                        int bandwidth) {
    const Eigen::Index M = a.size();
    Eigen::Matrix<double, Eigen::Dynamic, 4> v(M, 4);
    v.col(0) = a.array() - m.ma;
    v.col(1) = b.array() - m.mb;
    v.col(2) = a.array().square() - m.ga;
    v.col(3) = b.array().square() - m.gb;

    Eigen::Matrix4d psi = (v.transpose() * v) / static_cast<double>(M);
    for (int j = 1; j <= bandwidth && j < M; ++j) {
        const double w = 1.0 - static_cast<double>(j) / static_cast<double>(bandwidth + 1);
        const Eigen::Matrix4d gamma =
            (v.topRows(M - j).transpose() * v.bottomRows(M - j)) / static_cast<double>(M);
        psi += w * (gamma + gamma.transpose());
    }
    return psi;
}

double studentize(double num, double se) {
    if (se > 0.0) return num / se;
    return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

struct DeltaSe {
    double delta;
    double se;
};

template <typename DeltaFn, typename GradFn>
DeltaSe delta_and_se(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int bandwidth,
                     DeltaFn delta_fn, GradFn grad_fn) {
    const Moments m = compute_moments(a, b);
    if (!(m.s2a() > 0.0) || !(m.s2b() > 0.0))
        throw ZeroVarianceError("series variance must be positive");
    const Eigen::Vector4d grad = grad_fn(m);
    const Eigen::Matrix4d psi = hac_psi(a, b, m, bandwidth);
    const double avar = grad.dot(psi * grad);
    const double se = avar > 0.0 ? std::sqrt(avar / static_cast<double>(a.size())) : 0.0;
    return {delta_fn(m), se};
}

template <typename DeltaFn, typename GradFn>
TestResult block_bootstrap_test(TestKind kind, const Eigen::VectorXd& a,
                                const Eigen::VectorXd& b, const BootstrapParams& params,
                                DeltaFn delta_fn, GradFn grad_fn) {
    const Eigen::Index M = a.size();
    if (M != b.size()) throw LengthMismatchError("series lengths differ");
    if (M < 50) throw TooShortError("bootstrap tests need M >= 50");
    if (params.block_length < 1 || params.resamples < 1)
        throw ConfigError("block length and resamples must be positive");

    const DeltaSe base = delta_and_se(a, b, params.block_length, delta_fn, grad_fn);
    const double t_obs = studentize(std::abs(base.delta), base.se);

    const std::uint64_t blen = static_cast<std::uint64_t>(params.block_length);
    const std::uint64_t n_blocks =
        (static_cast<std::uint64_t>(M) + blen - 1) / blen;

    const int B = params.resamples;
    std::vector<double> d(static_cast<std::size_t>(B));
    parallel_for(static_cast<std::size_t>(B), resolve_threads(params.threads), [&](std::size_t i) {
        // per-resample stream keyed by (seed, i): order-independent
        CounterRng rng(params.seed, static_cast<std::uint64_t>(i));
        Eigen::VectorXd ra(M), rb(M);
        Eigen::Index pos = 0;
        for (std::uint64_t blk = 0; blk < n_blocks && pos < M; ++blk) {
            const std::uint64_t start = rng.next_below(static_cast<std::uint64_t>(M));
            for (std::uint64_t o = 0; o < blen && pos < M; ++o, ++pos) {
                const Eigen::Index src =
                    static_cast<Eigen::Index>((start + o) % static_cast<std::uint64_t>(M));
                ra[pos] = a[src];
                rb[pos] = b[src];
            }
        }
        const Moments m = compute_moments(ra, rb);
        if (!(m.s2a() > 0.0) || !(m.s2b() > 0.0)) {
            d[i] = std::numeric_limits<double>::infinity();
            return;
        }
        const Eigen::Vector4d grad = grad_fn(m);
        const Eigen::Matrix4d psi = hac_psi(ra, rb, m, params.block_length);
        const double avar = grad.dot(psi * grad);
        const double se = avar > 0.0 ? std::sqrt(avar / static_cast<double>(M)) : 0.0;
        d[i] = studentize(std::abs(delta_fn(m) - base.delta), se);
    });

    std::size_t count = 0;
    for (double di : d)
        if (di >= t_obs) ++count;

    TestResult result;
    result.kind = kind;
    result.statistic = base.se > 0.0 ? base.delta / base.se
                                     : (base.delta == 0.0 ? 0.0
                                                          : std::copysign(
                                                                std::numeric_limits<double>::infinity(),
                                                                base.delta));
    result.p_value = static_cast<double>(count + 1) / static_cast<double>(B + 1);
    result.stars = star_annotation(result.p_value);
    result.block_length = params.block_length;
    result.resamples = B;
    result.seed = params.seed;
    return result;
}

}  // namespace

TestResult sharpe_diff_test(const Eigen::Ref<const Eigen::VectorXd>& a,
                            const Eigen::Ref<const Eigen::VectorXd>& b,
                            const BootstrapParams& params) {
    const Eigen::VectorXd av = a, bv = b;
    return block_bootstrap_test(TestKind::SharpeDiff, av, bv, params, sharpe_delta,
                                sharpe_gradient);
}

TestResult variance_diff_test(const Eigen::Ref<const Eigen::VectorXd>& a,
                              const Eigen::Ref<const Eigen::VectorXd>& b,
                              const BootstrapParams& params) {
    const Eigen::VectorXd av = a, bv = b;
    return block_bootstrap_test(TestKind::VarianceDiff, av, bv, params, logvar_delta,
                                logvar_gradient);
}

}  // namespace folio
