#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "folio/covariance.hpp"
#include "folio/errors.hpp"
#include "folio/strategies.hpp"
#include "folio/util.hpp"
#include "test_support.hpp"

using namespace folio;

TEST_CASE("ew_weights") {
    CHECK(ew_weights(4).weights == Eigen::VectorXd::Constant(4, 0.25));
    CHECK(ew_weights(1).weights[0] == 1.0);
    const WeightVector w3 = ew_weights(3);
    CHECK(kahan_sum(w3.weights) == 1.0);
    CHECK(std::abs(w3.weights[0] - 1.0 / 3.0) < 1e-15);
    for (Eigen::Index n : {2, 5, 7, 97}) {
        const WeightVector w = ew_weights(n);
        CHECK(std::abs(kahan_sum(w.weights) - 1.0) <= 1e-16);
        CHECK(w.weights.minCoeff() > 0.0);
    }
}

TEST_CASE("mc_weights") {
    const WeightVector w = mc_weights(Eigen::Vector3d(2, 3, 5));
    CHECK(w.weights[0] == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(w.weights[1] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(w.weights[2] == doctest::Approx(0.5).epsilon(1e-15));

    const WeightVector equal = mc_weights(Eigen::Vector4d::Constant(7.0));
    CHECK((equal.weights - ew_weights(4).weights).cwiseAbs().maxCoeff() < 1e-15);

    CHECK_THROWS_AS(mc_weights(Eigen::Vector2d(1.0, 0.0)), NonPositiveCapError);
    CHECK_THROWS_AS(mc_weights(Eigen::Vector2d(1.0, -2.0)), NonPositiveCapError);
}

TEST_CASE("strategy_weights dispatch") {
    std::mt19937 rng(4);
    std::normal_distribution<double> normal(0.0, 0.01);
    Eigen::MatrixXd window(60, 3);
    for (Eigen::Index t = 0; t < 60; ++t)
        for (Eigen::Index j = 0; j < 3; ++j) window(t, j) = normal(rng);
    const Eigen::Vector3d caps(2, 3, 5);

    SUBCASE("EW ignores window and caps") {
        const auto a = strategy_weights(StrategyId::EquallyWeighted, window, caps);
        const auto b = strategy_weights(StrategyId::EquallyWeighted, 5.0 * window,
                                        Eigen::Vector3d(9, 9, 9));
        CHECK(a.weights.weights == b.weights.weights);
        CHECK(a.weights.weights == ew_weights(3).weights);
    }

    SUBCASE("MC is proportional to the cap row") {
        const auto out = strategy_weights(StrategyId::MarketCapWeighted, window, caps);
        CHECK(out.weights.weights[2] == doctest::Approx(0.5).epsilon(1e-15));
    }

    SUBCASE("MV with a diagonal-dominant window approximates inverse-variance weights") {
        // columns with very different variances, nearly uncorrelated
        Eigen::MatrixXd diag_window(4000, 2);
        std::mt19937 r2(11);
        std::normal_distribution<double> n1(0.0, 0.02), n2(0.0, 0.01);
        for (Eigen::Index t = 0; t < 4000; ++t) {
            diag_window(t, 0) = n1(r2);
            diag_window(t, 1) = n2(r2);
        }
        const auto out = strategy_weights(StrategyId::MinimumVariance, diag_window,
                                          Eigen::Vector2d(1, 1));
        const CovarianceMatrix cov = estimate_covariance(diag_window);
        const double v0 = cov.values(0, 0), v1 = cov.values(1, 1);
        const double expect0 = (1.0 / v0) / (1.0 / v0 + 1.0 / v1);
        CHECK(out.weights.weights[0] == doctest::Approx(expect0).epsilon(0.05));
        CHECK(out.diagnostics.status == SolveStatus::Optimal);
    }
}

TEST_CASE("all strategies return valid simplex weights") {
    std::mt19937 rng(6);
    std::normal_distribution<double> normal(0.0, 0.015);
    std::uniform_real_distribution<double> cap(1.0, 100.0);
    for (int rep = 0; rep < 20; ++rep) {
        const Eigen::Index n = 2 + rng() % 6;
        Eigen::MatrixXd window(50, n);
        Eigen::VectorXd caps(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            caps[j] = cap(rng);
            for (Eigen::Index t = 0; t < 50; ++t) window(t, j) = normal(rng);
        }
        for (StrategyId id : {StrategyId::MinimumVariance, StrategyId::EquallyWeighted,
                              StrategyId::MarketCapWeighted}) {
            const auto out = strategy_weights(id, window, caps);
            CHECK(out.weights.weights.minCoeff() >= -1e-10);
            CHECK(std::abs(out.weights.weights.sum() - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("MV in-sample variance never exceeds EW's") {
    std::mt19937 rng(15);
    std::normal_distribution<double> normal(0.0, 0.02);
    for (int rep = 0; rep < 10; ++rep) {
        const Eigen::Index n = 3 + rng() % 5;
        Eigen::MatrixXd window(80, n);
        for (Eigen::Index t = 0; t < 80; ++t)
            for (Eigen::Index j = 0; j < n; ++j) window(t, j) = normal(rng);
        const CovarianceMatrix cov = estimate_covariance(window);
        const auto mv = strategy_weights(StrategyId::MinimumVariance, window,
                                         Eigen::VectorXd::Ones(n));
        const Eigen::VectorXd ew = ew_weights(n).weights;
        CHECK(mv.weights.weights.dot(cov.values * mv.weights.weights) <=
              ew.dot(cov.values * ew) + 1e-10);
    }
}

TEST_CASE("strategy names round-trip") {
    for (StrategyId id : {StrategyId::MinimumVariance, StrategyId::EquallyWeighted,
                          StrategyId::MarketCapWeighted})
        CHECK(parse_strategy(strategy_name(id)) == id);
    CHECK(!parse_strategy("XX").has_value());
}
