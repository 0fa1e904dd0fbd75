#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "yieldctl/dataset.hpp"

namespace yieldctl {

struct PlantedFeature {
    std::size_t feature = 0;
    double sweet_lower = 0.0;
    double sweet_upper = 1.0;
};

/// Desk-scale stand-in for real process data: uniform features with a planted
/// defect mechanism. A row is defective with out_defect_prob when any relevant
/// feature leaves its sweet interval, else base_defect_prob.
struct SynthConfig {
    std::size_t n_rows = 1000;
    std::size_t n_features = 10;
    std::vector<PlantedFeature> relevant;
    double base_defect_prob = 0.005;
    double out_defect_prob = 0.6;
    double noise_scale = 0.0;  // gaussian measurement noise added after labeling
    double range_lower = 0.0;  // feature sampling range
    double range_upper = 1.0;
    std::uint64_t seed = 0;
};

struct GroundTruth {
    std::vector<PlantedFeature> relevant;
};

std::pair<ProcessDataset, GroundTruth> generate(const SynthConfig& cfg);

/// Jaccard overlap of two closed intervals. A zero-width union counts as 1
/// when the intervals are identical, 0 otherwise.
double ground_truth_overlap(double a_lower, double a_upper, double b_lower, double b_upper);

/// Expected defect probability of the planted mechanism (noise ignored).
double analytic_defect_probability(const SynthConfig& cfg);

}  // namespace yieldctl
