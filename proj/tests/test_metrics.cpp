#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "folio/errors.hpp"
#include "folio/metrics.hpp"
#include "test_support.hpp"

using namespace folio;

namespace {

Eigen::VectorXd random_series(Eigen::Index n, unsigned seed, double mean = 0.0,
                              double sd = 0.01) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> normal(mean, sd);
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = normal(rng);
    return x;
}

}  // namespace

TEST_CASE("oos_mean") {
    CHECK(oos_mean(Eigen::Vector2d(0.01, -0.01)) == 0.0);
    CHECK(oos_mean(Eigen::Vector3d(0.02, 0.02, 0.02)) == doctest::Approx(0.02).epsilon(1e-16));
    const Eigen::VectorXd x = random_series(10000, 1);
    CHECK(std::abs(oos_mean(x) - testsupport::oracle_mean(x)) < 1e-15);
    CHECK_THROWS_AS(oos_mean(Eigen::VectorXd()), EmptySeriesError);
}

TEST_CASE("oos_variance") {
    CHECK(oos_variance(Eigen::Vector2d(0.01, -0.01)) == doctest::Approx(0.0002).epsilon(1e-14));
    CHECK(oos_variance(Eigen::Vector4d::Constant(0.03)) == 0.0);
    const Eigen::VectorXd x = random_series(5000, 2);
    CHECK(oos_variance(x) ==
          doctest::Approx(testsupport::oracle_variance(x)).epsilon(1e-14));
    // shift invariance
    const Eigen::VectorXd shifted = x.array() + 0.5;
    CHECK(std::abs(oos_variance(shifted) - oos_variance(x)) < 1e-15);
    CHECK_THROWS_AS(oos_variance(Eigen::VectorXd::Ones(1)), TooShortError);
}

TEST_CASE("sharpe") {
    const Eigen::VectorXd y = random_series(4000, 3, 0.001, 0.01);
    const double oracle = testsupport::oracle_mean(y) / std::sqrt(testsupport::oracle_variance(y));
    CHECK(sharpe(y) == doctest::Approx(oracle).epsilon(1e-13));
    CHECK(sharpe(-y) == doctest::Approx(-sharpe(y)).epsilon(1e-12));

    Eigen::Vector4d z(0.01, -0.01, 0.03, 0.01);
    const double zm = testsupport::oracle_mean(z);
    const double zs = std::sqrt(testsupport::oracle_variance(z));
    CHECK(sharpe(z) == doctest::Approx(zm / zs).epsilon(1e-14));

    // positive-scale invariance
    CHECK(sharpe(3.5 * z) == doctest::Approx(sharpe(z)).epsilon(1e-12));
    CHECK_THROWS_AS(sharpe(Eigen::Vector3d::Constant(0.01)), ZeroVarianceError);
}

TEST_CASE("var95") {
    SUBCASE("constant series") {
        CHECK(var95(Eigen::VectorXd::Constant(20, 0.007)) == 0.007);
    }
    SUBCASE("tail example against the sort oracle") {
        Eigen::VectorXd x(102);
        x.setZero();
        x[0] = -0.10;
        x[1] = -0.05;
        CHECK(var95(x) == doctest::Approx(testsupport::oracle_quantile(x, 0.05)).epsilon(1e-15));
    }
    SUBCASE("shift equivariance and median bound") {
        const Eigen::VectorXd x = random_series(999, 4);
        CHECK(var95(x) == doctest::Approx(testsupport::oracle_quantile(x, 0.05)).epsilon(1e-13));
        const double c = 0.0123;
        CHECK(var95(x.array() + c) == doctest::Approx(var95(x) + c).epsilon(1e-12));
        CHECK(var95(x) <= testsupport::oracle_quantile(x, 0.5));
    }
    SUBCASE("too short") {
        CHECK_THROWS_AS(var95(Eigen::VectorXd::Zero(19)), TooShortError);
    }
}

TEST_CASE("wealth_curve") {
    const Eigen::VectorXd w = wealth_curve(Eigen::Vector2d(0.1, 0.1));
    CHECK(w[0] == doctest::Approx(1.1).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(1.21).epsilon(1e-15));
    CHECK(wealth_curve(Eigen::VectorXd::Zero(5)) == Eigen::VectorXd::Ones(5));

    const Eigen::VectorXd x = random_series(2000, 5);
    const Eigen::VectorXd curve = wealth_curve(x);
    const double logsum = std::exp((x.array() + 1.0).log().sum());
    CHECK(curve[curve.size() - 1] == doctest::Approx(logsum).epsilon(1e-12));

    CHECK_THROWS_AS(wealth_curve(Eigen::Vector2d(0.5, -1.0)), TotalLossError);
}

TEST_CASE("performance_report and annualization") {
    const Eigen::VectorXd x = random_series(1000, 6, 0.001, 0.01);
    const PerformanceReport r = performance_report(x, 252);
    CHECK(r.mean_annualized == 252.0 * r.mean_daily);
    CHECK(r.variance_annualized == 252.0 * r.variance_daily);
    CHECK(r.sd_annualized == std::sqrt(r.variance_annualized));
    CHECK(r.sharpe_daily == doctest::Approx(sharpe(x)).epsilon(1e-15));
    CHECK(r.var95 <= testsupport::oracle_quantile(x, 0.5));
    CHECK(r.M == 1000);
    // sharpe sign matches mean sign
    CHECK(r.sharpe_daily * r.mean_daily >= 0.0);

    const PerformanceReport identity = performance_report(x, 1);
    CHECK(identity.mean_annualized == identity.mean_daily);
    CHECK(identity.variance_annualized == identity.variance_daily);
}

TEST_CASE("variance matches the oracle on a long series") {
    const Eigen::VectorXd x = random_series(1000000, 7, 0.0005, 0.012);
    const double v = oos_variance(x);
    const double o = testsupport::oracle_variance(x);
    CHECK(std::abs(v - o) <= 1e-14 * o);
}
