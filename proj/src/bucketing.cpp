#include "folio/bucketing.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "folio/errors.hpp"

namespace folio {

BucketAssignment assign_buckets(const ScoreVector& scores, int k, bool allow_empty_pt1) {
    const Eigen::Index n = scores.size();
    if (n == 0) throw EmptyUniverseError("no assets to bucket");
    if (k < 1) throw OutOfRangeError("bucket count k must be >= 1");

    // (score, asset_id) pairs; ties at equal scores resolved by identifier
    // so input order never matters.
    struct Entry {
        double score;
        std::string asset;
    };
    std::vector<Entry> zero, positive;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s = scores.scores[i];
        if (!(s >= 0.0 && s <= 100.0))
            throw ScoreOutOfRangeError("score outside [0,100] for asset '" +
                                       scores.assets[static_cast<std::size_t>(i)] + "'");
        Entry e{s, scores.assets[static_cast<std::size_t>(i)]};
        (s == 0.0 ? zero : positive).push_back(std::move(e));
    }
    if (zero.empty() && !allow_empty_pt1)
        throw EmptyUniverseError("no zero-score asset for bucket 1 (use allow_empty_pt1)");
    const long m = static_cast<long>(positive.size());
    if (m < k)
        throw TooFewAssetsError("need at least k=" + std::to_string(k) +
                                " positive-score assets, got " + std::to_string(m));

    auto by_score_then_id = [](const Entry& a, const Entry& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.asset < b.asset;
    };
    std::sort(zero.begin(), zero.end(), by_score_then_id);
    std::sort(positive.begin(), positive.end(), by_score_then_id);

    BucketAssignment out;
    out.buckets.resize(static_cast<std::size_t>(k) + 1);
    for (int b = 0; b <= k; ++b) out.buckets[static_cast<std::size_t>(b)].id = b + 1;
    for (auto& e : zero) out.buckets[0].assets.push_back(e.asset);

    std::vector<std::vector<double>> bucket_scores(static_cast<std::size_t>(k) + 1);
    bucket_scores[0].assign(zero.size(), 0.0);
    for (long r = 0; r < m; ++r) {
        // rank-based cut at cumulative probabilities j/k
        const long b = 1 + (r * k) / m;  // 1..k
        out.buckets[static_cast<std::size_t>(b)].assets.push_back(positive[static_cast<std::size_t>(r)].asset);
        bucket_scores[static_cast<std::size_t>(b)].push_back(positive[static_cast<std::size_t>(r)].score);
    }
    for (int j = 1; j < k; ++j) {
        // upper edge of group j: score of the last asset below the cut
        const long idx = (static_cast<long>(j) * m) / k - 1;
        out.cut_points.push_back(positive[static_cast<std::size_t>(idx)].score);
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t b = 0; b < out.buckets.size(); ++b) {
        auto& bucket = out.buckets[b];
        const auto& ss = bucket_scores[b];
        if (ss.empty()) {
            bucket.min_score = bucket.mean_score = bucket.max_score = nan;
        } else {
            bucket.min_score = ss.front();
            bucket.max_score = ss.back();
            bucket.mean_score =
                std::accumulate(ss.begin(), ss.end(), 0.0) / static_cast<double>(ss.size());
        }
    }
    return out;
}

std::vector<int> bucket_sizes(const BucketAssignment& assignment) {
    std::vector<int> sizes;
    sizes.reserve(assignment.buckets.size());
    for (const auto& b : assignment.buckets) sizes.push_back(static_cast<int>(b.assets.size()));
    return sizes;
}

}  // namespace folio
