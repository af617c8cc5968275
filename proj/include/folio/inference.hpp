#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace folio {

enum class TestKind { SharpeDiff, VarianceDiff };

struct BootstrapParams {
    int block_length = 5;    // circular block length; HAC bandwidth too
    int resamples = 4999;    // B
    std::uint64_t seed = 0;
    int threads = 1;         // resamples are order-independent
};

struct TestResult {
    TestKind kind = TestKind::SharpeDiff;
    double statistic = 0.0;    // studentized difference
    double p_value = 1.0;
    std::string stars;         // "", "*", "**", "***"
    int block_length = 0;
    int resamples = 0;
    std::uint64_t seed = 0;
};

// "***" iff p <= 0.01, "**" iff p <= 0.05, "*" iff p <= 0.10, else "".
std::string star_annotation(double p);

// Studentized circular block bootstrap of the Sharpe-ratio difference
// SR(a) - SR(b) between two correlated series of equal length M >= 50.
// Joint (a_t, b_t) pairs are resampled in circular blocks; the difference
// is studentized with a Bartlett-kernel HAC standard error (bandwidth =
// block length). Two-sided p-value, deterministic given the seed.
TestResult sharpe_diff_test(const Eigen::Ref<const Eigen::VectorXd>& a,
                            const Eigen::Ref<const Eigen::VectorXd>& b,
                            const BootstrapParams& params);

// Same construction for the log-variance difference
// log var(a) - log var(b); annualization cancels in the log difference.
TestResult variance_diff_test(const Eigen::Ref<const Eigen::VectorXd>& a,
                              const Eigen::Ref<const Eigen::VectorXd>& b,
                              const BootstrapParams& params);

}  // namespace folio
