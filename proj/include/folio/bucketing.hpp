#pragma once

#include <string>
#include <vector>

#include "folio/panel.hpp"

namespace folio {

// Partition of the asset universe into the zero-score bucket (id 1) plus k
// equal-probability score buckets (ids 2..k+1). Within each bucket assets
// are listed in ascending (score, asset_id) order.
struct BucketAssignment {
    struct Bucket {
        int id = 0;  // 1-based
        std::vector<std::string> assets;
        double min_score = 0.0;
        double mean_score = 0.0;
        double max_score = 0.0;
    };

    std::vector<Bucket> buckets;      // size k+1, ordered by id
    std::vector<double> cut_points;   // k-1 interior cut scores (upper edge of each group)

    int num_buckets() const { return static_cast<int>(buckets.size()); }
};

// Bucket 1 holds exactly the zero-score assets. The m positive-score assets
// are sorted ascending by (score, asset_id); the asset at 0-based rank r
// goes to bucket 2 + floor(r*k/m). Requires m >= k, and at least one
// zero-score asset unless allow_empty_pt1 is set.
BucketAssignment assign_buckets(const ScoreVector& scores, int k,
                                bool allow_empty_pt1 = false);

// Asset count per bucket, ordered by bucket id; sums to the universe size.
std::vector<int> bucket_sizes(const BucketAssignment& assignment);

}  // namespace folio
