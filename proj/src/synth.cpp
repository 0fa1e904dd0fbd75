#include "yieldctl/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "yieldctl/error.hpp"
#include "yieldctl/rng.hpp"

namespace yieldctl {

namespace {

void validate(const SynthConfig& cfg) {
    if (cfg.n_rows == 0 || cfg.n_features == 0) throw Error("synth: empty shape");
    if (!(cfg.range_lower < cfg.range_upper)) throw Error("synth: bad sampling range");
    if (!(cfg.base_defect_prob >= 0.0 && cfg.base_defect_prob <= cfg.out_defect_prob &&
          cfg.out_defect_prob <= 1.0))
        throw Error("synth: need 0 <= base_defect_prob <= out_defect_prob <= 1");
    if (cfg.noise_scale < 0.0) throw Error("synth: noise_scale must be >= 0");
    std::set<std::size_t> seen;
    for (const PlantedFeature& pf : cfg.relevant) {
        if (pf.feature >= cfg.n_features) throw Error("synth: relevant feature index out of range");
        if (!seen.insert(pf.feature).second) throw Error("synth: duplicate relevant feature");
        if (!(pf.sweet_lower <= pf.sweet_upper) || pf.sweet_lower < cfg.range_lower ||
            pf.sweet_upper > cfg.range_upper)
            throw Error("synth: sweet interval outside the sampling range");
    }
}

}  // namespace

std::pair<ProcessDataset, GroundTruth> generate(const SynthConfig& cfg) {
    validate(cfg);

    std::vector<std::string> names(cfg.n_features);
    for (std::size_t j = 0; j < cfg.n_features; ++j) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "f%02zu", j);
        names[j] = buf;
    }

    Rng rng(cfg.seed);
    // Separate stream: toggling noise must not disturb features or labels.
    Rng noise_rng(derive_seed(cfg.seed, 0x6e6f697365ull));
    std::vector<double> values;
    values.reserve(cfg.n_rows * cfg.n_features);
    std::vector<int> target;
    target.reserve(cfg.n_rows);
    std::vector<double> row(cfg.n_features);

    for (std::size_t i = 0; i < cfg.n_rows; ++i) {
        for (std::size_t j = 0; j < cfg.n_features; ++j)
            row[j] = rng.uniform(cfg.range_lower, cfg.range_upper);

        bool inside = true;
        for (const PlantedFeature& pf : cfg.relevant)
            if (row[pf.feature] < pf.sweet_lower || row[pf.feature] > pf.sweet_upper) {
                inside = false;
                break;
            }
        const double p = inside ? cfg.base_defect_prob : cfg.out_defect_prob;
        target.push_back(rng.uniform01() < p ? 0 : 1);

        if (cfg.noise_scale > 0.0)
            for (std::size_t j = 0; j < cfg.n_features; ++j)
                row[j] += cfg.noise_scale * noise_rng.normal();

        values.insert(values.end(), row.begin(), row.end());
    }

    GroundTruth truth{cfg.relevant};
    return {ProcessDataset(std::move(names), std::move(values), std::move(target)),
            std::move(truth)};
}

double ground_truth_overlap(double a_lower, double a_upper, double b_lower, double b_upper) {
    if (a_lower > a_upper || b_lower > b_upper) throw Error("ground_truth_overlap: bad interval");
    const double inter =
        std::max(0.0, std::min(a_upper, b_upper) - std::max(a_lower, b_lower));
    const double uni = (a_upper - a_lower) + (b_upper - b_lower) - inter;
    if (uni <= 0.0) return a_lower == b_lower && a_upper == b_upper ? 1.0 : 0.0;
    return inter / uni;
}

double analytic_defect_probability(const SynthConfig& cfg) {
    validate(cfg);
    double inside = 1.0;
    const double span = cfg.range_upper - cfg.range_lower;
    for (const PlantedFeature& pf : cfg.relevant)
        inside *= (pf.sweet_upper - pf.sweet_lower) / span;
    return inside * cfg.base_defect_prob + (1.0 - inside) * cfg.out_defect_prob;
}

}  // namespace yieldctl
