#include "yieldctl/ice.hpp"

#include <algorithm>

#include "yieldctl/error.hpp"
#include "yieldctl/rng.hpp"

namespace yieldctl {

ProbModel prob_scorer(const BoostedEnsemble& ens) {
    return [&ens](std::span<const double> row) { return ens.probability(row); };
}

IceSurface ice_surface(const ProbModel& model, const ProcessDataset& ds, std::size_t feature,
                       std::size_t max_instances, std::uint64_t seed) {
    if (ds.rows() == 0) throw Error("ice_surface: empty dataset");
    if (feature >= ds.cols()) throw Error("ice_surface: feature index out of range");
    if (max_instances == 0) throw Error("ice_surface: max_instances must be >= 1");

    IceSurface surface;
    surface.feature = feature;

    surface.grid = ds.column(feature);
    std::sort(surface.grid.begin(), surface.grid.end());
    surface.grid.erase(std::unique(surface.grid.begin(), surface.grid.end()), surface.grid.end());
    surface.constant_feature = surface.grid.size() == 1;

    if (ds.rows() <= max_instances) {
        surface.instance_rows.resize(ds.rows());
        for (std::size_t i = 0; i < ds.rows(); ++i) surface.instance_rows[i] = i;
    } else {
        Rng rng(seed);
        surface.instance_rows = sample_without_replacement(ds.rows(), max_instances, rng);
    }

    surface.curves.reserve(surface.instance_rows.size());
    std::vector<double> scratch(ds.cols());
    for (std::size_t row_index : surface.instance_rows) {
        auto row = ds.row(row_index);
        std::copy(row.begin(), row.end(), scratch.begin());
        std::vector<double> curve(surface.grid.size());
        for (std::size_t p = 0; p < surface.grid.size(); ++p) {
            scratch[feature] = surface.grid[p];
            curve[p] = model(scratch);
        }
        surface.curves.push_back(std::move(curve));
    }
    surface.pdp = pdp(surface);
    return surface;
}

std::vector<double> pdp(const IceSurface& surface) {
    if (surface.curves.empty()) throw Error("pdp: surface has no curves");
    std::vector<double> mean(surface.grid.size(), 0.0);
    for (const auto& curve : surface.curves)
        for (std::size_t p = 0; p < mean.size(); ++p) mean[p] += curve[p];
    for (double& value : mean) value /= static_cast<double>(surface.curves.size());
    return mean;
}

ControlRange control_range(const std::vector<double>& pdp_values, const std::vector<double>& grid,
                           double alpha, std::size_t feature) {
    if (grid.empty() || pdp_values.size() != grid.size())
        throw Error("control_range: pdp/grid size mismatch");
    if (!(alpha > 0.0)) throw Error("control_range: alpha must be positive");

    const double peak = *std::max_element(pdp_values.begin(), pdp_values.end());
    const double cutoff = peak - alpha;

    ControlRange range;
    range.feature = feature;
    range.alpha = alpha;
    bool found = false;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (pdp_values[g] < cutoff) continue;
        if (!found) range.lower = grid[g];
        range.upper = grid[g];
        found = true;
    }
    return range;  // the argmax always qualifies, so found is always true
}

std::vector<ControlRange> ranges_table(const ProbModel& model, const ProcessDataset& ds,
                                       const std::vector<std::size_t>& main_features,
                                       const std::vector<double>& alphas,
                                       std::size_t max_instances, std::uint64_t seed) {
    std::vector<ControlRange> table;
    table.reserve(main_features.size() * alphas.size());
    for (std::size_t feature : main_features) {
        IceSurface surface = ice_surface(model, ds, feature, max_instances, seed);
        for (double alpha : alphas)
            table.push_back(control_range(surface.pdp, surface.grid, alpha, feature));
    }
    return table;
}

}  // namespace yieldctl
