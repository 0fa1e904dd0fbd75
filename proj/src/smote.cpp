#include "yieldctl/smote.hpp"

#include <algorithm>
#include <cmath>

#include "yieldctl/error.hpp"
#include "yieldctl/rng.hpp"

namespace yieldctl {

std::vector<std::size_t> nearest_neighbors(const std::vector<std::vector<double>>& points,
                                           std::size_t query_index, std::size_t k) {
    if (query_index >= points.size()) throw Error("nearest_neighbors: query index out of range");
    if (k == 0) throw Error("nearest_neighbors: k must be >= 1");
    if (k >= points.size())
        throw Error("nearest_neighbors: k must be smaller than the point count");

    const auto& query = points[query_index];
    std::vector<std::pair<double, std::size_t>> by_distance;
    by_distance.reserve(points.size() - 1);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i == query_index) continue;
        if (points[i].size() != query.size())
            throw Error("nearest_neighbors: dimension mismatch");
        double d2 = 0.0;
        for (std::size_t j = 0; j < query.size(); ++j) {
            const double diff = points[i][j] - query[j];
            d2 += diff * diff;
        }
        by_distance.emplace_back(d2, i);
    }
    std::sort(by_distance.begin(), by_distance.end());  // pair ordering breaks ties by index

    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = by_distance[i].second;
    return out;
}

std::vector<double> synthesize(const std::vector<double>& x_i, const std::vector<double>& x_k,
                               double w) {
    if (x_i.size() != x_k.size()) throw Error("synthesize: dimension mismatch");
    std::vector<double> out(x_i.size());
    for (std::size_t j = 0; j < x_i.size(); ++j) out[j] = x_i[j] + w * (x_k[j] - x_i[j]);
    return out;
}

ProcessDataset oversample(const ProcessDataset& train, const SmoteConfig& cfg) {
    if (cfg.k == 0) throw Error("smote: k must be >= 1");

    const std::size_t zeros = train.count_label(0);
    const std::size_t ones = train.rows() - zeros;
    const int minority_label = zeros <= ones ? 0 : 1;
    const std::size_t minority_count = std::min(zeros, ones);
    const std::size_t majority_count = std::max(zeros, ones);
    const std::size_t target = cfg.target_count.value_or(majority_count);

    if (target < minority_count)
        throw Error("smote: target_count below current minority count");
    if (target == minority_count) return train;
    if (minority_count < 2) throw Error("smote: minority class needs at least 2 rows");
    if (minority_count < cfg.k + 1)
        throw Error("smote: minority class too small for k=" + std::to_string(cfg.k));

    std::vector<std::vector<double>> minority;
    minority.reserve(minority_count);
    for (std::size_t i = 0; i < train.rows(); ++i) {
        if (train.target()[i] == minority_label) {
            auto row = train.row(i);
            minority.emplace_back(row.begin(), row.end());
        }
    }

    // Neighbor search space: raw values, or z-scored columns when configured.
    std::vector<std::vector<double>> search_space = minority;
    if (cfg.standardize) {
        const std::size_t dims = train.cols();
        for (std::size_t j = 0; j < dims; ++j) {
            double mean = 0.0;
            for (const auto& row : minority) mean += row[j];
            mean /= static_cast<double>(minority.size());
            double var = 0.0;
            for (const auto& row : minority) var += (row[j] - mean) * (row[j] - mean);
            const double sd = std::sqrt(var / static_cast<double>(minority.size()));
            for (auto& row : search_space)
                row[j] = sd > 0.0 ? (row[j] - mean) / sd : 0.0;
        }
    }

    // Neighbor lists are computed lazily; many bases repeat when the deficit
    // is large.
    std::vector<std::vector<std::size_t>> neighbor_cache(minority.size());

    Rng rng(cfg.seed);
    std::vector<std::vector<double>> synthetic;
    std::vector<int> labels;
    const std::size_t deficit = target - minority_count;
    synthetic.reserve(deficit);
    for (std::size_t s = 0; s < deficit; ++s) {
        const std::size_t base = rng.index(minority.size());
        auto& neighbors = neighbor_cache[base];
        if (neighbors.empty()) neighbors = nearest_neighbors(search_space, base, cfg.k);
        const std::size_t pick = neighbors[rng.index(neighbors.size())];
        const double w = rng.uniform01();
        synthetic.push_back(synthesize(minority[base], minority[pick], w));
        labels.push_back(minority_label);
    }
    return append_rows(train, synthetic, labels);
}

}  // namespace yieldctl
