#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "yieldctl/dataset.hpp"
#include "yieldctl/gbdt.hpp"

namespace yieldctl {

/// A model viewed as a probability function of one row (y-axis of ICE plots).
using ProbModel = std::function<double(std::span<const double>)>;

ProbModel prob_scorer(const BoostedEnsemble& ens);

/// One feature's ICE curves: grid of observed values, one curve per retained
/// instance, and their pointwise mean (the PDP).
struct IceSurface {
    std::size_t feature = 0;
    std::vector<double> grid;                 // sorted distinct observed values
    std::vector<std::size_t> instance_rows;   // source rows the curves belong to
    std::vector<std::vector<double>> curves;  // instances x grid
    std::vector<double> pdp;                  // per-grid mean of curves
    bool constant_feature = false;            // grid has a single value
};

/// Sweeps the feature over every distinct observed value for each retained
/// instance, holding the other features fixed. Instances are subsampled
/// (seeded) when the dataset exceeds max_instances.
IceSurface ice_surface(const ProbModel& model, const ProcessDataset& ds, std::size_t feature,
                       std::size_t max_instances, std::uint64_t seed);

/// Arithmetic mean of the ICE curves per grid point; no re-prediction.
std::vector<double> pdp(const IceSurface& surface);

struct ControlRange {
    std::size_t feature = 0;
    double alpha = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

/// [min, max] of the grid values whose PDP stays within alpha of the PDP
/// maximum. The argmax always qualifies, so the range is never empty.
ControlRange control_range(const std::vector<double>& pdp_values, const std::vector<double>& grid,
                           double alpha, std::size_t feature = 0);

/// One ControlRange per (main feature, alpha), feature-major.
std::vector<ControlRange> ranges_table(const ProbModel& model, const ProcessDataset& ds,
                                       const std::vector<std::size_t>& main_features,
                                       const std::vector<double>& alphas,
                                       std::size_t max_instances, std::uint64_t seed);

}  // namespace yieldctl
