#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "yieldctl/dataset.hpp"

namespace yieldctl {

struct SmoteConfig {
    std::size_t k = 5;
    /// Desired minority row count after oversampling. Defaults to the
    /// majority count when unset.
    std::optional<std::size_t> target_count;
    std::uint64_t seed = 0;
    /// Optional pre-step: pick neighbors on z-scored minority columns instead
    /// of raw values (interpolation always happens in raw space).
    bool standardize = false;
};

/// Indices of the k nearest points to points[query_index] under the Euclidean
/// metric, the query itself excluded. Ordered by (distance, index) ascending;
/// ties resolve to the lower index.
std::vector<std::size_t> nearest_neighbors(const std::vector<std::vector<double>>& points,
                                           std::size_t query_index, std::size_t k);

/// x_i + w * (x_k - x_i), coordinate-wise.
std::vector<double> synthesize(const std::vector<double>& x_i, const std::vector<double>& x_k,
                               double w);

/// Appends synthetic minority rows until the minority class reaches the
/// target count. Each synthetic row interpolates a uniformly chosen minority
/// row toward one of its k nearest minority neighbors with weight w ~ U[0,1].
/// Original rows are retained unchanged; majority rows never parent synthetic
/// points.
ProcessDataset oversample(const ProcessDataset& train, const SmoteConfig& cfg);

}  // namespace yieldctl
