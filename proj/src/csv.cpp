#include "folio/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include "folio/errors.hpp"
#include "folio/report.hpp"

namespace folio {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingInputError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();  // CRLF
        lines.push_back(line);
    }
    // strip UTF-8 BOM if present
    if (!lines.empty() && lines[0].rfind("\xEF\xBB\xBF", 0) == 0) lines[0].erase(0, 3);
    // drop trailing blank lines
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw MissingInputError("empty file: " + path);
    return lines;
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& column,
                  const std::string& path) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    while (begin != end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
    while (end != begin && std::isspace(static_cast<unsigned char>(*(end - 1)))) --end;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || begin == end)
        throw MissingCellError("missing or unparseable cell at row " + std::to_string(row) +
                               ", column '" + column + "' in " + path);
    return value;
}

bool is_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

struct RawPanel {
    std::vector<std::string> dates;
    std::vector<std::string> assets;
    Eigen::MatrixXd values;
};

RawPanel load_panel_file(const std::string& path) {
    const auto lines = read_lines(path);
    auto header = split_csv_line(lines[0]);
    if (header.size() < 2 || header[0] != "date")
        throw MissingInputError("expected header `date,<asset>,...` in " + path);

    RawPanel panel;
    panel.assets.assign(header.begin() + 1, header.end());
    const Eigen::Index N = static_cast<Eigen::Index>(panel.assets.size());
    const Eigen::Index T = static_cast<Eigen::Index>(lines.size()) - 1;
    panel.values.resize(T, N);
    panel.dates.reserve(T);

    for (Eigen::Index r = 0; r < T; ++r) {
        const std::size_t row = static_cast<std::size_t>(r) + 2;  // 1-based file row
        auto cells = split_csv_line(lines[r + 1]);
        if (static_cast<Eigen::Index>(cells.size()) != N + 1)
            throw MissingCellError("row " + std::to_string(row) + " has " +
                                   std::to_string(cells.size()) + " cells, expected " +
                                   std::to_string(N + 1) + " in " + path);
        if (!is_iso_date(cells[0]))
            throw MissingInputError("row " + std::to_string(row) +
                                    ": not an ISO-8601 date: '" + cells[0] + "' in " + path);
        panel.dates.push_back(cells[0]);
        for (Eigen::Index c = 0; c < N; ++c)
            panel.values(r, c) = parse_cell(cells[c + 1], row, panel.assets[c], path);
    }
    return panel;
}

void write_panel_file(const std::vector<std::string>& dates,
                      const std::vector<std::string>& assets,
                      const Eigen::MatrixXd& values, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingInputError("cannot write file: " + path);
    out << "date";
    for (const auto& a : assets) out << ',' << a;
    out << '\n';
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        out << dates[r];
        for (Eigen::Index c = 0; c < values.cols(); ++c)
            out << ',' << format_sig(values(r, c), 12);
        out << '\n';
    }
}

}  // namespace

ReturnPanel load_return_panel(const std::string& path) {
    auto raw = load_panel_file(path);
    ReturnPanel panel{std::move(raw.dates), std::move(raw.assets), std::move(raw.values)};
    validate_return_panel(panel);
    return panel;
}

CapPanel load_cap_panel(const std::string& path, const ReturnPanel& panel) {
    auto raw = load_panel_file(path);
    CapPanel caps{std::move(raw.dates), std::move(raw.assets), std::move(raw.values)};
    validate_cap_panel(caps, panel);
    return caps;
}

ScoreVector load_scores(const std::string& path, const ReturnPanel& panel) {
    const auto lines = read_lines(path);
    auto header = split_csv_line(lines[0]);
    if (header.size() != 2 || header[0] != "asset_id" || header[1] != "score")
        throw MissingInputError("expected header `asset_id,score` in " + path);

    std::unordered_map<std::string, double> by_asset;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto cells = split_csv_line(lines[i]);
        if (cells.size() != 2)
            throw MissingCellError("row " + std::to_string(i + 1) + " has " +
                                   std::to_string(cells.size()) + " cells, expected 2 in " + path);
        double s = parse_cell(cells[1], i + 1, "score", path);
        if (!(s >= 0.0 && s <= 100.0))
            throw ScoreOutOfRangeError("score " + format_sig(s) + " for asset '" + cells[0] +
                                       "' outside [0,100] in " + path);
        by_asset[cells[0]] = s;
    }

    ScoreVector scores;
    scores.assets = panel.assets;
    scores.scores.resize(static_cast<Eigen::Index>(panel.assets.size()));
    for (Eigen::Index i = 0; i < scores.scores.size(); ++i) {
        auto it = by_asset.find(panel.assets[static_cast<std::size_t>(i)]);
        if (it == by_asset.end())
            throw UnscoredAssetError("asset '" + panel.assets[static_cast<std::size_t>(i)] +
                                     "' has no score in " + path);
        scores.scores[i] = it->second;
        by_asset.erase(it);
    }
    for (const auto& [asset, score] : by_asset)
        std::cerr << "warning: scored asset '" << asset << "' not in panel, ignored\n";
    return scores;
}

void save_return_panel(const ReturnPanel& panel, const std::string& path) {
    write_panel_file(panel.dates, panel.assets, panel.values, path);
}

void save_cap_panel(const CapPanel& caps, const std::string& path) {
    write_panel_file(caps.dates, caps.assets, caps.values, path);
}

}  // namespace folio
