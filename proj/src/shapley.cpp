#include "yieldctl/shapley.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "yieldctl/error.hpp"
#include "yieldctl/rng.hpp"

namespace yieldctl {

RawModel raw_scorer(const BoostedEnsemble& ens) {
    return [&ens](std::span<const double> row) { return ens.raw(row); };
}

namespace {

// Mean model output over the background with the masked coordinates replaced
// by x. The E[f] term of the value function cancels in Shapley differences,
// so phi computations use these raw means directly.
double masked_mean(const RawModel& model, std::uint32_t mask, std::span<const double> x,
                   const ProcessDataset& background, std::vector<double>& scratch) {
    const std::size_t n = x.size();
    double sum = 0.0;
    for (std::size_t z = 0; z < background.rows(); ++z) {
        auto row = background.row(z);
        for (std::size_t j = 0; j < n; ++j)
            scratch[j] = (mask >> j) & 1u ? x[j] : row[j];
        sum += model(scratch);
    }
    return sum / static_cast<double>(background.rows());
}

}  // namespace

double value_function(const RawModel& model, const std::vector<std::size_t>& subset,
                      std::span<const double> x, const ProcessDataset& background) {
    if (background.rows() == 0) throw Error("value_function: empty background");
    const std::size_t n = x.size();
    std::uint32_t mask = 0;
    for (std::size_t j : subset) {
        if (j >= n) throw Error("value_function: feature index out of range");
        mask |= 1u << j;
    }
    std::vector<double> scratch(n);
    const double with_subset = masked_mean(model, mask, x, background, scratch);
    const double baseline = masked_mean(model, 0, x, background, scratch);
    return with_subset - baseline;
}

std::vector<double> shapley_exact(const RawModel& model, std::span<const double> x,
                                  const ProcessDataset& background, std::size_t n_features) {
    if (background.rows() == 0) throw Error("shapley_exact: empty background");
    if (n_features > 16)
        throw Error("shapley_exact: subset enumeration supports at most 16 features; "
                    "use shapley_sampled for wider schemas");
    if (x.size() != n_features) throw Error("shapley_exact: instance dimension mismatch");

    const std::size_t n = n_features;
    const std::uint32_t n_masks = 1u << n;
    std::vector<double> v(n_masks);
    std::vector<double> scratch(n);
    for (std::uint32_t mask = 0; mask < n_masks; ++mask)
        v[mask] = masked_mean(model, mask, x, background, scratch);

    // weight[s] = s! (n-s-1)! / n!
    std::vector<double> weight(n);
    for (std::size_t s = 0; s < n; ++s) {
        double w = 1.0;
        for (std::size_t i = 2; i <= s; ++i) w *= static_cast<double>(i);
        for (std::size_t i = 2; i <= n - s - 1; ++i) w *= static_cast<double>(i);
        for (std::size_t i = 2; i <= n; ++i) w /= static_cast<double>(i);
        weight[s] = w;
    }

    std::vector<double> phi(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t bit = 1u << i;
        for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
            if (mask & bit) continue;
            const auto size = static_cast<std::size_t>(std::popcount(mask));
            phi[i] += weight[size] * (v[mask | bit] - v[mask]);
        }
    }
    return phi;
}

std::vector<double> shapley_sampled(const RawModel& model, std::span<const double> x,
                                    const ProcessDataset& background, std::size_t n_features,
                                    std::size_t n_permutations, std::uint64_t seed) {
    if (background.rows() == 0) throw Error("shapley_sampled: empty background");
    if (n_permutations == 0) throw Error("shapley_sampled: need at least one permutation");
    if (x.size() != n_features) throw Error("shapley_sampled: instance dimension mismatch");

    const std::size_t n = n_features;
    const std::size_t nb = background.rows();

    double baseline = 0.0;
    for (std::size_t z = 0; z < nb; ++z) baseline += model(background.row(z));
    baseline /= static_cast<double>(nb);

    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < n; ++j) perm[j] = j;

    std::vector<double> composites(nb * n);
    std::vector<double> phi(n, 0.0);
    Rng rng(seed);
    for (std::size_t p = 0; p < n_permutations; ++p) {
        shuffle(perm, rng);
        for (std::size_t z = 0; z < nb; ++z) {
            auto row = background.row(z);
            std::copy(row.begin(), row.end(), composites.begin() + z * n);
        }
        double prev = baseline;
        for (std::size_t step = 0; step < n; ++step) {
            const std::size_t feature = perm[step];
            double cur = 0.0;
            for (std::size_t z = 0; z < nb; ++z) {
                composites[z * n + feature] = x[feature];
                cur += model({composites.data() + z * n, n});
            }
            cur /= static_cast<double>(nb);
            phi[feature] += cur - prev;
            prev = cur;
        }
    }
    for (double& value : phi) value /= static_cast<double>(n_permutations);
    return phi;
}

namespace {

// Shapley coalition weights W[i][j] = i! (j-i)! / (j+1)!.
std::vector<std::vector<double>> coalition_weights(std::size_t max_players) {
    std::vector<std::vector<double>> w(max_players, std::vector<double>(max_players, 0.0));
    for (std::size_t j = 0; j < max_players; ++j) {
        w[0][j] = 1.0 / static_cast<double>(j + 1);
        w[j][j] = 1.0 / static_cast<double>(j + 1);
        for (std::size_t i = j; i-- > 1;)
            w[i][j] = w[i + 1][j] * static_cast<double>(j - i) / static_cast<double>(i + 1);
    }
    return w;
}

struct PathState {
    std::vector<char> in_x;                 // feature committed to x's branch
    std::vector<char> in_z;                 // feature committed to z's branch
    std::vector<int> x_features;            // stack of features in in_x
    std::vector<int> z_features;            // stack of features in in_z
};

// Walks one tree for one (x, z) pair. Each feature where x and z diverge is a
// player; leaves credit every player on the path with the appropriate
// coalition weight.
void recurse(const Tree& tree, int node_id, std::span<const double> x, std::span<const double> z,
             const std::vector<std::vector<double>>& w, PathState& state,
             std::vector<double>& phi) {
    const TreeNode& node = tree.nodes[node_id];
    if (node.is_leaf()) {
        const std::size_t sx = state.x_features.size();
        const std::size_t sz = state.z_features.size();
        const std::size_t players = sx + sz;
        if (players == 0) return;  // x and z agree along this path
        for (int f : state.x_features) phi[f] += w[sx - 1][players - 1] * node.weight;
        for (int f : state.z_features) phi[f] -= w[sx][players - 1] * node.weight;
        return;
    }

    const int f = node.feature;
    const int x_child = x[f] <= node.threshold ? node.left : node.right;
    const int z_child = z[f] <= node.threshold ? node.left : node.right;

    if (x_child == z_child) {
        recurse(tree, x_child, x, z, w, state, phi);
        return;
    }
    if (state.in_x[f]) {
        recurse(tree, x_child, x, z, w, state, phi);
        return;
    }
    if (state.in_z[f]) {
        recurse(tree, z_child, x, z, w, state, phi);
        return;
    }
    state.in_x[f] = 1;
    state.x_features.push_back(f);
    recurse(tree, x_child, x, z, w, state, phi);
    state.x_features.pop_back();
    state.in_x[f] = 0;

    state.in_z[f] = 1;
    state.z_features.push_back(f);
    recurse(tree, z_child, x, z, w, state, phi);
    state.z_features.pop_back();
    state.in_z[f] = 0;
}

}  // namespace

std::vector<double> shapley_tree_exact(const BoostedEnsemble& ens, std::span<const double> x,
                                       const ProcessDataset& background) {
    if (background.rows() == 0) throw Error("shapley_tree_exact: empty background");
    if (x.size() != ens.n_features) throw Error("shapley_tree_exact: instance dimension mismatch");

    std::size_t max_depth = 1;
    for (const Tree& tree : ens.trees) {
        // depth bound: players per path never exceed the node count
        max_depth = std::max(max_depth, tree.nodes.size());
    }
    const auto w = coalition_weights(max_depth + 1);

    PathState state;
    state.in_x.assign(ens.n_features, 0);
    state.in_z.assign(ens.n_features, 0);

    std::vector<double> phi(ens.n_features, 0.0);
    for (std::size_t zi = 0; zi < background.rows(); ++zi) {
        auto z = background.row(zi);
        for (const Tree& tree : ens.trees) recurse(tree, 0, x, z, w, state, phi);
    }
    const double scale = ens.learning_rate / static_cast<double>(background.rows());
    for (double& value : phi) value *= scale;
    return phi;
}

ImportanceSummary aggregate(const std::vector<std::vector<double>>& phi) {
    if (phi.empty()) throw Error("aggregate: empty phi matrix");
    const std::size_t n = phi.front().size();

    ImportanceSummary out;
    out.mean_abs.assign(n, 0.0);
    for (const auto& row : phi) {
        if (row.size() != n) throw Error("aggregate: ragged phi matrix");
        for (std::size_t j = 0; j < n; ++j) out.mean_abs[j] += std::fabs(row[j]);
    }
    for (double& value : out.mean_abs) value /= static_cast<double>(phi.size());

    out.order.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.order[j] = j;
    std::sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
        return out.mean_abs[a] > out.mean_abs[b] ||
               (out.mean_abs[a] == out.mean_abs[b] && a < b);
    });

    double total = 0.0;
    for (double value : out.mean_abs) total += value;
    out.cumulative_ratio.resize(n);
    double running = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        running += out.mean_abs[out.order[r]];
        out.cumulative_ratio[r] = total > 0.0 ? running / total : 0.0;
    }
    return out;
}

std::vector<std::size_t> select_main_features(const std::vector<std::size_t>& order,
                                              const std::vector<double>& cumulative_ratio,
                                              double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw Error("select_main_features: threshold must lie in (0,1]");
    if (order.size() != cumulative_ratio.size())
        throw Error("select_main_features: order/ratio length mismatch");
    if (order.empty()) return {};
    // Zero total importance (all ratios 0) selects nothing.
    if (cumulative_ratio.back() == 0.0) return {};

    std::size_t count = 0;
    while (count < order.size() && cumulative_ratio[count] <= threshold) ++count;
    count = std::max<std::size_t>(count, 1);
    return {order.begin(), order.begin() + count};
}

ShapleyReport build_report(std::vector<std::vector<double>> phi, double threshold) {
    ShapleyReport report;
    report.importance = aggregate(phi);
    report.main_features =
        select_main_features(report.importance.order, report.importance.cumulative_ratio, threshold);
    report.phi = std::move(phi);
    return report;
}

}  // namespace yieldctl
