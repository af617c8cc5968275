#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "folio/covariance.hpp"
#include "folio/errors.hpp"
#include "test_support.hpp"

using namespace folio;

TEST_CASE("rank-1 window gets a minimal ridge and a PD certificate") {
    // power-of-two values keep the sample covariance exactly singular
    const double u = 0.015625;  // 2^-6
    Eigen::MatrixXd window(3, 2);
    window << u, 2 * u, 2 * u, 4 * u, 3 * u, 6 * u;
    const CovarianceMatrix cov = estimate_covariance(window, 1e-8);
    // hand-computed sample covariance [[1,2],[2,4]]*2^-12 plus delta*I
    const double s = u * u;
    CHECK(cov.regularization > 0.0);
    CHECK(cov.values(0, 0) == s + cov.regularization);
    CHECK(cov.values(0, 1) == 2 * s);
    CHECK(cov.values(1, 1) == 4 * s + cov.regularization);
    CHECK(is_positive_definite(cov.values));
    // ridge starts at ridge_scale * trace/n and may only escalate by x10
    const double base = 1e-8 * (5 * s / 2.0);
    CHECK(cov.regularization >= base);
    CHECK(cov.regularization <= base * 1e8);
}

TEST_CASE("orthogonal columns give an exactly diagonal estimate") {
    const double a = std::sqrt(0.03), b = std::sqrt(0.0075);
    Eigen::MatrixXd window(4, 2);
    window << a, b, -a, b, a, -b, -a, -b;
    const CovarianceMatrix cov = estimate_covariance(window, 1e-8);
    CHECK(cov.regularization == 0.0);
    CHECK(cov.values(0, 0) == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(cov.values(1, 1) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(std::abs(cov.values(0, 1)) <= 1e-18);
    CHECK((cov.values - testsupport::oracle_covariance(window)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("n=1 window reduces to the sample variance") {
    Eigen::MatrixXd window(5, 1);
    window << 0.01, -0.02, 0.03, 0.0, 0.015;
    const CovarianceMatrix cov = estimate_covariance(window, 1e-8);
    CHECK(cov.size() == 1);
    CHECK(cov.values(0, 0) == doctest::Approx(testsupport::oracle_variance(window.col(0))).epsilon(1e-14));
}

TEST_CASE("matches the two-pass oracle when no ridge is needed") {
    std::mt19937 rng(42);
    std::normal_distribution<double> normal(0.0, 0.02);
    for (int rep = 0; rep < 20; ++rep) {
        const Eigen::Index T = 30 + rep, n = 2 + rep % 5;
        Eigen::MatrixXd window(T, n);
        for (Eigen::Index t = 0; t < T; ++t)
            for (Eigen::Index j = 0; j < n; ++j) window(t, j) = normal(rng);
        const CovarianceMatrix cov = estimate_covariance(window, 1e-8);
        CHECK(cov.regularization == 0.0);
        const Eigen::MatrixXd oracle = testsupport::oracle_covariance(window);
        CHECK((cov.values - oracle).cwiseAbs().maxCoeff() <
              1e-12 * std::max(1.0, oracle.cwiseAbs().maxCoeff()));
        // symmetry to 1e-12 relative
        CHECK((cov.values - cov.values.transpose()).cwiseAbs().maxCoeff() <=
              1e-12 * cov.values.cwiseAbs().maxCoeff());
        CHECK(is_positive_definite(cov.values));
    }
}

TEST_CASE("scaling the window scales the estimate quadratically") {
    std::mt19937 rng(1);
    std::normal_distribution<double> normal(0.0, 0.01);
    Eigen::MatrixXd window(40, 3);
    for (Eigen::Index t = 0; t < 40; ++t)
        for (Eigen::Index j = 0; j < 3; ++j) window(t, j) = normal(rng);
    const double c = 2.5;
    const CovarianceMatrix base = estimate_covariance(window, 0.0);
    const CovarianceMatrix scaled = estimate_covariance(c * window, 0.0);
    CHECK((scaled.values - c * c * base.values).cwiseAbs().maxCoeff() <
          1e-12 * scaled.values.cwiseAbs().maxCoeff());
}

TEST_CASE("degenerate and unfixable windows") {
    CHECK_THROWS_AS(estimate_covariance(Eigen::MatrixXd::Constant(10, 3, 0.01), 1e-8),
                    DegenerateWindowError);
    // rank-deficient window with regularization disabled
    Eigen::MatrixXd window(3, 2);
    window << 1, 2, 2, 4, 3, 6;
    CHECK_THROWS_AS(estimate_covariance(window, 0.0), NotPositiveDefiniteError);
    CHECK_THROWS_AS(estimate_covariance(Eigen::MatrixXd::Zero(1, 2), 1e-8), BadInputError);
}

TEST_CASE("wide window (n > T_w) is rescued by the ridge") {
    std::mt19937 rng(8);
    std::normal_distribution<double> normal(0.0, 0.015);
    Eigen::MatrixXd window(84, 85);
    for (Eigen::Index t = 0; t < 84; ++t)
        for (Eigen::Index j = 0; j < 85; ++j) window(t, j) = normal(rng);
    const CovarianceMatrix cov = estimate_covariance(window, 1e-8);
    CHECK(cov.regularization > 0.0);
    CHECK(is_positive_definite(cov.values));
}
