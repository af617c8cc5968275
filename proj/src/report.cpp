#include "folio/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "folio/errors.hpp"

namespace folio {

std::string format_sig(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return buf;
}

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingInputError("cannot open file for hashing: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

ResultTable build_result_table(const BacktestResult& backtest, int window_size,
                               int annualization, const BootstrapParams& bootstrap) {
    ResultTable table;
    table.window_size = window_size;

    // preserve strategy order of first appearance, buckets ascending
    std::vector<StrategyId> strategies;
    for (const auto& p : backtest.pairs)
        if (std::find(strategies.begin(), strategies.end(), p.strategy) == strategies.end())
            strategies.push_back(p.strategy);

    for (StrategyId s : strategies) {
        std::vector<const PairResult*> block;
        for (const auto& p : backtest.pairs)
            if (p.strategy == s) block.push_back(&p);
        std::sort(block.begin(), block.end(),
                  [](const PairResult* a, const PairResult* b) { return a->bucket_id < b->bucket_id; });

        const PairResult* reference = nullptr;  // bucket 1, when present
        for (const PairResult* p : block)
            if (p->bucket_id == 1) reference = p;

        std::size_t first_row = table.rows.size();
        for (const PairResult* p : block) {
            const PerformanceReport perf = performance_report(p->oos_returns, annualization);
            ResultRow row;
            row.strategy = s;
            row.bucket_id = p->bucket_id;
            row.variance_annualized = perf.variance_annualized;
            row.mean_annualized = perf.mean_annualized;
            row.sharpe_daily = perf.sharpe_daily;
            row.var95 = perf.var95;
            row.M = perf.M;
            if (reference && p->bucket_id != 1) {
                row.variance_stars =
                    variance_diff_test(p->oos_returns, reference->oos_returns, bootstrap).stars;
                row.sharpe_stars =
                    sharpe_diff_test(p->oos_returns, reference->oos_returns, bootstrap).stars;
            }
            table.rows.push_back(std::move(row));
        }

        // bold markers: lowest variance / highest Sharpe, ties to lowest bucket id
        std::size_t min_var = first_row, max_sr = first_row;
        for (std::size_t i = first_row; i < table.rows.size(); ++i) {
            if (table.rows[i].variance_annualized < table.rows[min_var].variance_annualized)
                min_var = i;
            if (table.rows[i].sharpe_daily > table.rows[max_sr].sharpe_daily) max_sr = i;
        }
        if (first_row < table.rows.size()) {
            table.rows[min_var].is_min_variance = true;
            table.rows[max_sr].is_max_sharpe = true;
        }
    }
    return table;
}

void write_metrics_csv(const ResultTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingInputError("cannot write file: " + path);
    out << "strategy,bucket,variance_annualized,mean_annualized,sharpe_daily,var95,"
           "variance_stars,sharpe_stars,is_min_variance,is_max_sharpe,M\n";
    for (const auto& r : table.rows) {
        out << strategy_name(r.strategy) << ',' << r.bucket_id << ','
            << format_sig(r.variance_annualized) << ',' << format_sig(r.mean_annualized) << ','
            << format_sig(r.sharpe_daily) << ',' << format_sig(r.var95) << ','
            << r.variance_stars << ',' << r.sharpe_stars << ','
            << (r.is_min_variance ? 1 : 0) << ',' << (r.is_max_sharpe ? 1 : 0) << ','
            << r.M << '\n';
    }
}

void write_wealth_csv(const BacktestResult& backtest, StrategyId strategy,
                      const std::string& path) {
    std::vector<const PairResult*> block;
    for (const auto& p : backtest.pairs)
        if (p.strategy == strategy) block.push_back(&p);
    std::sort(block.begin(), block.end(),
              [](const PairResult* a, const PairResult* b) { return a->bucket_id < b->bucket_id; });
    if (block.empty()) throw MissingInputError("no backtest pairs for strategy");

    std::vector<Eigen::VectorXd> curves;
    curves.reserve(block.size());
    for (const PairResult* p : block) curves.push_back(wealth_curve(p->oos_returns));

    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingInputError("cannot write file: " + path);
    out << "date";
    for (const PairResult* p : block) out << ",PT" << p->bucket_id;
    out << '\n';
    // initial wealth row, dated at the start marker
    out << "start";
    for (std::size_t j = 0; j < block.size(); ++j) out << ",1";
    out << '\n';
    for (Eigen::Index i = 0; i < backtest.M; ++i) {
        out << backtest.oos_dates[static_cast<std::size_t>(i)];
        for (const auto& c : curves) out << ',' << format_sig(c[i]);
        out << '\n';
    }
}

void write_buckets_csv(const BucketAssignment& assignment, const ScoreVector& scores,
                       const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingInputError("cannot write file: " + path);
    out << "bucket_id,asset_id,score\n";
    for (const auto& bucket : assignment.buckets) {
        for (const auto& asset : bucket.assets) {
            double score = 0.0;
            for (Eigen::Index i = 0; i < scores.size(); ++i)
                if (scores.assets[static_cast<std::size_t>(i)] == asset) {
                    score = scores.scores[i];
                    break;
                }
            out << bucket.id << ',' << asset << ',' << format_sig(score) << '\n';
        }
    }
}

void write_bucket_summary_csv(const BucketAssignment& assignment, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingInputError("cannot write file: " + path);
    out << "bucket_id,size,min_score,mean_score,max_score\n";
    for (const auto& bucket : assignment.buckets) {
        out << bucket.id << ',' << bucket.assets.size() << ',' << format_sig(bucket.min_score)
            << ',' << format_sig(bucket.mean_score) << ',' << format_sig(bucket.max_score)
            << '\n';
    }
}

void write_descriptives_csv(const PanelDescriptives& desc, const ScoreDescriptives& score_desc,
                            int annualization, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingInputError("cannot write file: " + path);
    out << "dataset,T,N,mean,sd,skewness,excess_kurtosis,annualization\n";
    out << "returns," << desc.num_days << ',' << desc.num_assets << ','
        << format_sig(desc.mean_annualized) << ',' << format_sig(desc.sd_annualized) << ','
        << format_sig(desc.skewness) << ',' << format_sig(desc.excess_kurtosis) << ','
        << annualization << '\n';
    out << "scores,," << desc.num_assets << ',' << format_sig(score_desc.mean) << ','
        << format_sig(score_desc.sd) << ',' << format_sig(score_desc.skewness) << ','
        << format_sig(score_desc.excess_kurtosis) << ",\n";
}

void write_weight_path_csv(const BacktestResult& backtest, const PairResult& pair,
                           const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingInputError("cannot write file: " + path);
    out << "date";
    for (const auto& a : pair.assets) out << ',' << a;
    out << '\n';
    for (Eigen::Index i = 0; i < pair.weight_path.rows(); ++i) {
        out << backtest.oos_dates[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < pair.weight_path.cols(); ++j)
            out << ',' << format_sig(pair.weight_path(i, j));
        out << '\n';
    }
}

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                          "#bcbd22", "#17becf"};

}  // namespace

void write_wealth_svg(const std::string& wealth_csv_path, const std::string& svg_path,
                      const std::string& title) {
    std::ifstream in(wealth_csv_path, std::ios::binary);
    if (!in) throw MissingInputError("cannot open wealth file: " + wealth_csv_path);

    std::string line;
    if (!std::getline(in, line)) throw MissingInputError("empty wealth file: " + wealth_csv_path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> labels;
    {
        std::stringstream ss(line);
        std::string cell;
        bool first = true;
        while (std::getline(ss, cell, ',')) {
            if (!first) labels.push_back(cell);
            first = false;
        }
    }
    std::vector<std::vector<double>> series(labels.size());
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');  // date column
        for (std::size_t j = 0; j < labels.size(); ++j) {
            if (!std::getline(ss, cell, ','))
                throw MissingInputError("short row in wealth file: " + wealth_csv_path);
            series[j].push_back(std::stod(cell));
        }
    }
    if (series.empty() || series[0].empty())
        throw MissingInputError("no data rows in wealth file: " + wealth_csv_path);

    double lo = series[0][0], hi = series[0][0];
    for (const auto& s : series)
        for (double v : s) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (hi == lo) hi = lo + 1.0;

    const double width = 900, height = 520;
    const double ml = 60, mr = 150, mt = 40, mb = 40;
    const double pw = width - ml - mr, ph = height - mt - mb;
    const std::size_t n = series[0].size();

    std::ofstream out(svg_path, std::ios::binary);
    if (!out) throw MissingInputError("cannot write file: " + svg_path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << ml << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
        << title << "</text>\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#888\"/>\n";
    // y-axis labels at lo, mid, hi
    for (double frac : {0.0, 0.5, 1.0}) {
        const double v = lo + frac * (hi - lo);
        const double y = mt + ph - frac * ph;
        out << "<text x=\"6\" y=\"" << y + 4 << "\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_sig(v, 4) << "</text>\n";
    }
    for (std::size_t j = 0; j < series.size(); ++j) {
        const char* color = kPalette[j % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < n; ++i) {
            const double x = ml + (n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.5) * pw;
            const double y = mt + ph - (series[j][i] - lo) / (hi - lo) * ph;
            out << format_sig(x, 7) << ',' << format_sig(y, 7) << ' ';
        }
        out << "\"/>\n";
        const double ly = mt + 16 + 18 * static_cast<double>(j);
        out << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << ml + pw + 34
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << ml + pw + 40 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << labels[j] << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace folio
