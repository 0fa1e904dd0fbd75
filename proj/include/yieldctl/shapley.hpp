#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "yieldctl/dataset.hpp"
#include "yieldctl/gbdt.hpp"

namespace yieldctl {

/// A model viewed as a raw-score function of one row. Attribution runs in
/// margin space, where tree ensembles are additive.
using RawModel = std::function<double(std::span<const double>)>;

RawModel raw_scorer(const BoostedEnsemble& ens);

/// Contribution of a feature subset:
///   v(S) = mean_z f(x on S, z off S) - mean_z f(z)
/// over the empirical background distribution.
double value_function(const RawModel& model, const std::vector<std::size_t>& subset,
                      std::span<const double> x, const ProcessDataset& background);

/// Exact Shapley values by enumerating all 2^n feature subsets (n <= 16).
/// phi_i = sum over S not containing i of |S|!(n-|S|-1)!/n! * (v(S+i) - v(S)).
std::vector<double> shapley_exact(const RawModel& model, std::span<const double> x,
                                  const ProcessDataset& background, std::size_t n_features);

/// Permutation-sampling estimate of the same quantity; unbiased, seeded.
/// The path for schemas too wide for subset enumeration.
std::vector<double> shapley_sampled(const RawModel& model, std::span<const double> x,
                                    const ProcessDataset& background, std::size_t n_features,
                                    std::size_t n_permutations, std::uint64_t seed);

/// Exact interventional Shapley values for a tree ensemble, computed per
/// background row by path recursion instead of subset enumeration. Produces
/// the same values as shapley_exact over the same background at any width.
std::vector<double> shapley_tree_exact(const BoostedEnsemble& ens, std::span<const double> x,
                                       const ProcessDataset& background);

struct ImportanceSummary {
    std::vector<double> mean_abs;          // per feature, mean |phi|
    std::vector<std::size_t> order;        // features by descending mean_abs
    std::vector<double> cumulative_ratio;  // along order; ends at 1 (or all 0)
};

ImportanceSummary aggregate(const std::vector<std::vector<double>>& phi);

/// Longest prefix of the importance order whose cumulative ratio stays within
/// the threshold; at least one feature unless total importance is zero.
std::vector<std::size_t> select_main_features(const std::vector<std::size_t>& order,
                                              const std::vector<double>& cumulative_ratio,
                                              double threshold = 0.70);

struct ShapleyReport {
    std::vector<std::vector<double>> phi;  // instances x features
    ImportanceSummary importance;
    std::vector<std::size_t> main_features;
};

ShapleyReport build_report(std::vector<std::vector<double>> phi, double threshold = 0.70);

}  // namespace yieldctl
