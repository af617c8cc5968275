#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FOLIO_CLI_PATH) + " " + args + " >cli_stdout.txt 2>cli_stderr.txt";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

struct CliFixture {
    std::string data_dir = "cli_data";

    CliFixture() {
        fs::remove_all(data_dir);
        REQUIRE(run_cli("synth --days 150 --assets 12 --zero-assets 3 --seed 11 --out-dir " +
                        data_dir) == 0);
    }

    std::string data_flags() const {
        return "--returns " + data_dir + "/returns.csv --scores " + data_dir +
               "/scores.csv --caps " + data_dir + "/caps.csv";
    }
};

std::size_t line_count(const std::string& path) {
    const std::string content = testsupport::read_file(path);
    std::size_t n = 0;
    for (char c : content)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("full pipeline produces the expected artifacts") {
    const CliFixture fx;
    fs::remove_all("cli_run1");
    const std::string common =
        fx.data_flags() + " --k 2 --ws 40 --resamples 99 --seed 7 --out-dir cli_run1";
    REQUIRE(run_cli(common + " all") == 0);

    CHECK(fs::exists("cli_run1/descriptives.csv"));
    CHECK(fs::exists("cli_run1/buckets.csv"));
    CHECK(fs::exists("cli_run1/bucket_summary.csv"));
    CHECK(fs::exists("cli_run1/run_manifest.json"));
    CHECK(fs::exists("cli_run1/wealth_ws40_MV.csv"));
    CHECK(fs::exists("cli_run1/wealth_ws40_EW.csv"));
    CHECK(fs::exists("cli_run1/wealth_ws40_MC.csv"));

    // header + 3 strategies x 3 buckets
    CHECK(line_count("cli_run1/metrics_ws40.csv") == 10);
    // header + start row + M=110 dated rows
    CHECK(line_count("cli_run1/wealth_ws40_EW.csv") == 112);
}

TEST_CASE("reruns with the same seed are byte-identical") {
    const CliFixture fx;
    fs::remove_all("cli_rep1");
    fs::remove_all("cli_rep2");
    const std::string common =
        fx.data_flags() + " --k 2 --ws 40 --resamples 99 --seed 42 all --out-dir ";
    REQUIRE(run_cli(common + "cli_rep1") == 0);
    REQUIRE(run_cli(common + "cli_rep2") == 0);
    for (const char* name : {"metrics_ws40.csv", "wealth_ws40_MV.csv", "wealth_ws40_EW.csv",
                             "wealth_ws40_MC.csv", "buckets.csv", "descriptives.csv"}) {
        CHECK(testsupport::read_file(std::string("cli_rep1/") + name) ==
              testsupport::read_file(std::string("cli_rep2/") + name));
    }
}

TEST_CASE("backtest, test and report subcommands chain through files") {
    const CliFixture fx;
    fs::remove_all("cli_chain");
    const std::string common = fx.data_flags() + " --k 2 --ws 40 --out-dir cli_chain ";
    REQUIRE(run_cli(common + "backtest") == 0);
    CHECK(fs::exists("cli_chain/oos_ws40.csv"));
    CHECK(line_count("cli_chain/oos_ws40.csv") == 111);  // header + M rows

    REQUIRE(run_cli(common + "--resamples 99 --seed 3 test") == 0);
    CHECK(fs::exists("cli_chain/tests_ws40.csv"));
    // header + 3 strategies x 2 non-reference buckets x 2 test kinds
    CHECK(line_count("cli_chain/tests_ws40.csv") == 13);

    REQUIRE(run_cli(common + "report") == 0);
    CHECK(fs::exists("cli_chain/wealth_ws40_MV.svg"));
    CHECK(fs::exists("cli_chain/wealth_ws40_EW.svg"));
    CHECK(fs::exists("cli_chain/wealth_ws40_MC.svg"));
}

TEST_CASE("exit codes by error category") {
    const CliFixture fx;
    // config error: seed is mandatory for the full pipeline
    CHECK(run_cli(fx.data_flags() + " --k 2 --ws 40 --out-dir cli_err all") == 2);
    // config error: malformed flag value
    CHECK(run_cli("describe --ws notanumber --out-dir cli_err") == 2);
    // data error: missing input file
    CHECK(run_cli("describe --returns absent.csv --scores absent.csv --caps absent.csv "
                  "--out-dir cli_err") == 3);
}
