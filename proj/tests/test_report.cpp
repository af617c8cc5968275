#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <set>

#include "folio/backtest.hpp"
#include "folio/errors.hpp"
#include "folio/report.hpp"
#include "folio/synth.hpp"
#include "test_support.hpp"

using namespace folio;

namespace {

struct Fixture {
    SynthData data;
    BacktestResult backtest;
    int window_size = 40;
    int annualization = 252;

    Fixture() {
        SynthConfig cfg;
        cfg.num_days = 160;
        cfg.num_assets = 12;
        cfg.zero_score_assets = 3;
        cfg.seed = 99;
        data = generate_synthetic(cfg);
        BacktestConfig bt;
        bt.window_size = window_size;
        bt.buckets = assign_buckets(data.scores, 2);
        backtest = run_rolling_backtest(data.returns, data.caps, bt);
    }

    BootstrapParams bootstrap() const {
        BootstrapParams p;
        p.resamples = 99;
        p.seed = 5;
        return p;
    }
};

std::vector<std::string> read_lines(const std::string& path) {
    const std::string content = testsupport::read_file(path);
    std::vector<std::string> lines;
    std::string cur;
    for (char c : content) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

std::size_t count_substr(const std::string& text, const std::string& what) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(what, pos)) != std::string::npos) {
        ++count;
        pos += what.size();
    }
    return count;
}

}  // namespace

TEST_CASE("format_sig") {
    CHECK(format_sig(0.123456789) == "0.123457");
    CHECK(format_sig(1.0) == "1");
    CHECK(format_sig(-0.25, 3) == "-0.25");
    CHECK(format_sig(1234567.0, 4) == "1.235e+06");
    CHECK(format_sig(0.0) == "0");
}

TEST_CASE("hash_file is content-determined") {
    testsupport::write_file("hash_a.txt", "hello\n");
    testsupport::write_file("hash_b.txt", "hello\n");
    testsupport::write_file("hash_c.txt", "hellp\n");
    CHECK(hash_file("hash_a.txt") == hash_file("hash_b.txt"));
    CHECK(hash_file("hash_a.txt") != hash_file("hash_c.txt"));
    CHECK(hash_file("hash_a.txt").size() == 16);
    CHECK_THROWS_AS(hash_file("no_such_file.bin"), MissingInputError);
    std::remove("hash_a.txt");
    std::remove("hash_b.txt");
    std::remove("hash_c.txt");
}

TEST_CASE("build_result_table structure") {
    const Fixture fx;
    const ResultTable table =
        build_result_table(fx.backtest, fx.window_size, fx.annualization, fx.bootstrap());
    CHECK(table.window_size == fx.window_size);
    CHECK(table.rows.size() == fx.backtest.pairs.size());

    std::set<StrategyId> strategies;
    for (const auto& r : table.rows) strategies.insert(r.strategy);
    CHECK(strategies.size() == 3);

    for (StrategyId s : strategies) {
        int min_var = 0, max_sr = 0, rows = 0;
        int prev_bucket = 0;
        double best_var = 0.0, best_sr = 0.0;
        int best_var_bucket = 0, best_sr_bucket = 0;
        for (const auto& r : table.rows) {
            if (r.strategy != s) continue;
            ++rows;
            CHECK(r.bucket_id > prev_bucket);  // buckets ascending within a block
            prev_bucket = r.bucket_id;
            CHECK(r.M == fx.backtest.M);
            if (r.bucket_id == 1) {
                // the reference bucket is never starred
                CHECK(r.variance_stars.empty());
                CHECK(r.sharpe_stars.empty());
            }
            if (r.is_min_variance) ++min_var;
            if (r.is_max_sharpe) ++max_sr;
            if (rows == 1 || r.variance_annualized < best_var) {
                best_var = r.variance_annualized;
                best_var_bucket = r.bucket_id;
            }
            if (rows == 1 || r.sharpe_daily > best_sr) {
                best_sr = r.sharpe_daily;
                best_sr_bucket = r.bucket_id;
            }
        }
        CHECK(rows == 3);  // PT1..PT3
        // exactly one bold marker of each kind per strategy block
        CHECK(min_var == 1);
        CHECK(max_sr == 1);
        for (const auto& r : table.rows) {
            if (r.strategy != s) continue;
            if (r.is_min_variance) CHECK(r.bucket_id == best_var_bucket);
            if (r.is_max_sharpe) CHECK(r.bucket_id == best_sr_bucket);
        }
    }
}

TEST_CASE("metrics csv layout") {
    const Fixture fx;
    const ResultTable table =
        build_result_table(fx.backtest, fx.window_size, fx.annualization, fx.bootstrap());
    write_metrics_csv(table, "metrics_test.csv");
    const auto lines = read_lines("metrics_test.csv");
    CHECK(lines.size() == table.rows.size() + 1);
    CHECK(lines[0] ==
          "strategy,bucket,variance_annualized,mean_annualized,sharpe_daily,var95,"
          "variance_stars,sharpe_stars,is_min_variance,is_max_sharpe,M");
    for (std::size_t i = 1; i < lines.size(); ++i)
        CHECK(count_substr(lines[i], ",") == 10);
    std::remove("metrics_test.csv");
}

TEST_CASE("wealth csv has M+1 rows and an all-ones start row") {
    const Fixture fx;
    write_wealth_csv(fx.backtest, StrategyId::EquallyWeighted, "wealth_test.csv");
    const auto lines = read_lines("wealth_test.csv");
    REQUIRE(lines.size() == static_cast<std::size_t>(fx.backtest.M) + 2);
    CHECK(lines[0] == "date,PT1,PT2,PT3");
    CHECK(lines[1] == "start,1,1,1");
    // dated rows follow the oos dates in order
    CHECK(lines[2].substr(0, 10) == fx.backtest.oos_dates[0]);
    CHECK(lines.back().substr(0, 10) == fx.backtest.oos_dates.back());
    CHECK_THROWS_AS(write_wealth_csv(BacktestResult{}, StrategyId::EquallyWeighted, "x.csv"),
                    MissingInputError);
    std::remove("wealth_test.csv");
}

TEST_CASE("wealth svg has one polyline per bucket and a legend") {
    const Fixture fx;
    write_wealth_csv(fx.backtest, StrategyId::MinimumVariance, "wealth_svg_in.csv");
    write_wealth_svg("wealth_svg_in.csv", "wealth_test.svg", "test chart");
    const std::string svg = testsupport::read_file("wealth_test.svg");
    CHECK(count_substr(svg, "<polyline") == 3);
    CHECK(svg.find(">PT1<") != std::string::npos);
    CHECK(svg.find(">PT3<") != std::string::npos);
    CHECK(svg.find("test chart") != std::string::npos);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK_THROWS_AS(write_wealth_svg("absent.csv", "y.svg", "t"), MissingInputError);
    std::remove("wealth_svg_in.csv");
    std::remove("wealth_test.svg");
}

TEST_CASE("bucket csvs") {
    const Fixture fx;
    const BucketAssignment buckets = assign_buckets(fx.data.scores, 2);
    write_buckets_csv(buckets, fx.data.scores, "buckets_test.csv");
    const auto lines = read_lines("buckets_test.csv");
    CHECK(lines[0] == "bucket_id,asset_id,score");
    CHECK(lines.size() == static_cast<std::size_t>(fx.data.scores.size()) + 1);

    write_bucket_summary_csv(buckets, "bucket_summary_test.csv");
    const auto summary = read_lines("bucket_summary_test.csv");
    CHECK(summary[0] == "bucket_id,size,min_score,mean_score,max_score");
    CHECK(summary.size() == buckets.buckets.size() + 1);
    std::remove("buckets_test.csv");
    std::remove("bucket_summary_test.csv");
}

TEST_CASE("weight path csv has one row per oos day") {
    const Fixture fx;
    const PairResult* pair = fx.backtest.find(2, StrategyId::MinimumVariance);
    REQUIRE(pair != nullptr);
    write_weight_path_csv(fx.backtest, *pair, "weights_test.csv");
    const auto lines = read_lines("weights_test.csv");
    CHECK(lines.size() == static_cast<std::size_t>(fx.backtest.M) + 1);
    CHECK(count_substr(lines[0], ",") == pair->assets.size());
    std::remove("weights_test.csv");
}
