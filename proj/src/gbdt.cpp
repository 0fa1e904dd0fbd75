#include "yieldctl/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "yieldctl/csv.hpp"
#include "yieldctl/error.hpp"
#include "yieldctl/rng.hpp"

namespace yieldctl {

std::string variant_name(Variant v) {
    return v == Variant::exact_greedy ? "exact-greedy" : "goss-leafwise";
}

Variant variant_from_name(const std::string& name) {
    if (name == "exact-greedy") return Variant::exact_greedy;
    if (name == "goss-leafwise") return Variant::goss_leafwise;
    throw Error("unknown model variant '" + name + "' (expected exact-greedy or goss-leafwise)");
}

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

GradientPair logistic_grad_hess(int label, double raw) {
    if (!std::isfinite(raw)) throw Error("logistic_grad_hess: raw score must be finite");
    const double p = sigmoid(raw);
    return {p - static_cast<double>(label), p * (1.0 - p)};
}

double init_base_score(const std::vector<int>& labels) {
    if (labels.empty()) throw Error("init_base_score: empty label list");
    double positives = 0.0;
    for (int y : labels) positives += y;
    const double p = positives / static_cast<double>(labels.size());
    if (p <= 0.0) return -15.0;
    if (p >= 1.0) return 15.0;
    return std::clamp(std::log(p / (1.0 - p)), -15.0, 15.0);
}

double BoostedEnsemble::raw(std::span<const double> row) const {
    if (row.size() != n_features) throw Error("predict: row dimension mismatch");
    double sum = 0.0;
    for (const auto& tree : trees) sum += tree.value(row);
    return base_score + learning_rate * sum;
}

double BoostedEnsemble::probability(std::span<const double> row) const { return sigmoid(raw(row)); }

int BoostedEnsemble::label(std::span<const double> row) const { return raw(row) >= 0.0 ? 1 : 0; }

Prediction predict(const BoostedEnsemble& ens, std::span<const double> row) {
    Prediction out;
    out.raw = ens.raw(row);
    out.probability = sigmoid(out.raw);
    out.label = out.raw >= 0.0 ? 1 : 0;
    return out;
}

namespace {

struct Candidate {
    double threshold = 0.0;
    double gain = 0.0;
    double hess_left = 0.0;
    double hess_right = 0.0;
};

// Scans one node's rows, pre-sorted by feature value ascending, for the best
// regularized-gain threshold. Candidates are midpoints between consecutive
// distinct values; best is kept with strict > so earlier (lower) thresholds
// win ties.
std::optional<Candidate> scan_exact(const std::vector<double>& values,
                                    const std::vector<double>& gs, const std::vector<double>& hs,
                                    double lambda, double gamma) {
    const std::size_t n = values.size();
    if (n < 2) return std::nullopt;

    double g_total = 0.0, h_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        g_total += gs[i];
        h_total += hs[i];
    }
    if (h_total + lambda <= 0.0) return std::nullopt;
    const double parent = g_total * g_total / (h_total + lambda);

    std::optional<Candidate> best;
    double g_left = 0.0, h_left = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        g_left += gs[i];
        h_left += hs[i];
        if (!(values[i] < values[i + 1])) continue;
        const double g_right = g_total - g_left;
        const double h_right = h_total - h_left;
        if (h_left + lambda <= 0.0 || h_right + lambda <= 0.0) continue;
        const double gain = 0.5 * (g_left * g_left / (h_left + lambda) +
                                   g_right * g_right / (h_right + lambda) - parent) -
                            gamma;
        if (!best || gain > best->gain)
            best = Candidate{0.5 * (values[i] + values[i + 1]), gain, h_left, h_right};
    }
    if (best && best->gain > 0.0) return best;
    return std::nullopt;
}

}  // namespace

std::optional<Split> best_split_exact(const std::vector<std::size_t>& rows,
                                      const std::vector<GradientPair>& grads,
                                      const ProcessDataset& data, double lambda, double gamma) {
    if (rows.empty()) throw Error("best_split_exact: empty row set");
    if (lambda < 0.0) throw Error("best_split_exact: lambda must be >= 0");

    std::optional<Split> best;
    std::vector<std::size_t> sorted_rows(rows);
    std::vector<double> values(rows.size()), gs(rows.size()), hs(rows.size());
    for (std::size_t feature = 0; feature < data.cols(); ++feature) {
        std::sort(sorted_rows.begin(), sorted_rows.end(), [&](std::size_t a, std::size_t b) {
            const double va = data.at(a, feature), vb = data.at(b, feature);
            return va < vb || (va == vb && a < b);
        });
        for (std::size_t i = 0; i < sorted_rows.size(); ++i) {
            values[i] = data.at(sorted_rows[i], feature);
            gs[i] = grads[sorted_rows[i]].g;
            hs[i] = grads[sorted_rows[i]].h;
        }
        auto cand = scan_exact(values, gs, hs, lambda, gamma);
        if (cand && (!best || cand->gain > best->gain))
            best = Split{feature, cand->threshold, cand->gain};
    }
    return best;
}

double leaf_weight_sums(double grad_sum, double hess_sum, double lambda) {
    if (hess_sum + lambda <= 0.0) throw Error("leaf_weight: H + lambda must be positive");
    return -grad_sum / (hess_sum + lambda);
}

double leaf_weight(const std::vector<std::size_t>& rows, const std::vector<GradientPair>& grads,
                   double lambda) {
    double g = 0.0, h = 0.0;
    for (std::size_t i : rows) {
        g += grads[i].g;
        h += grads[i].h;
    }
    return leaf_weight_sums(g, h, lambda);
}

namespace {

int copy_preorder(const Tree& src, int old_id, Tree& dst) {
    const int new_id = static_cast<int>(dst.nodes.size());
    dst.nodes.push_back(src.nodes[old_id]);
    if (!src.nodes[old_id].is_leaf()) {
        const int left = copy_preorder(src, src.nodes[old_id].left, dst);
        const int right = copy_preorder(src, src.nodes[old_id].right, dst);
        dst.nodes[new_id].left = left;
        dst.nodes[new_id].right = right;
    }
    return new_id;
}

Tree to_preorder(const Tree& tree) {
    Tree out;
    out.nodes.reserve(tree.nodes.size());
    copy_preorder(tree, 0, out);
    return out;
}

void require_trainable(const ProcessDataset& data) {
    if (data.rows() == 0) throw Error("train: empty training set");
    const std::size_t zeros = data.count_label(0);
    if (zeros == 0 || zeros == data.rows())
        throw Error("train: degenerate single-class training set");
}

// Level-wise growth using globally pre-sorted feature orders; each level
// dispatches rows to their node in sorted order so per-node scans see values
// ascending.
Tree grow_exact_tree(const ProcessDataset& data,
                     const std::vector<std::vector<std::uint32_t>>& sorted_order,
                     const std::vector<GradientPair>& grads, const TrainParams& p) {
    const std::size_t n = data.rows();
    const std::size_t n_features = data.cols();

    Tree tree;
    tree.nodes.emplace_back();
    std::vector<std::uint32_t> node_of_row(n, 0);
    std::vector<char> open{1};
    std::vector<int> frontier{0};

    struct NodeBest {
        int feature = -1;
        Candidate cand;
    };

    for (std::size_t depth = 0; depth < p.max_depth && !frontier.empty(); ++depth) {
        const std::size_t n_nodes = tree.nodes.size();
        std::vector<double> g_total(n_nodes, 0.0), h_total(n_nodes, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t node = node_of_row[i];
            if (!open[node]) continue;
            g_total[node] += grads[i].g;
            h_total[node] += grads[i].h;
        }

        std::vector<NodeBest> best(n_nodes);
        std::vector<std::vector<double>> vals(n_nodes), gs(n_nodes), hs(n_nodes);
        for (std::size_t feature = 0; feature < n_features; ++feature) {
            for (int node : frontier) {
                vals[node].clear();
                gs[node].clear();
                hs[node].clear();
            }
            for (std::uint32_t idx : sorted_order[feature]) {
                const std::uint32_t node = node_of_row[idx];
                if (!open[node]) continue;
                vals[node].push_back(data.at(idx, feature));
                gs[node].push_back(grads[idx].g);
                hs[node].push_back(grads[idx].h);
            }
            for (int node : frontier) {
                auto cand = scan_exact(vals[node], gs[node], hs[node], p.lambda, p.gamma);
                if (cand && (best[node].feature < 0 || cand->gain > best[node].cand.gain))
                    best[node] = NodeBest{static_cast<int>(feature), *cand};
            }
        }

        std::vector<int> next_frontier;
        for (int node : frontier) {
            const NodeBest& nb = best[node];
            if (nb.feature >= 0 && nb.cand.hess_left >= p.min_child_weight &&
                nb.cand.hess_right >= p.min_child_weight) {
                const int left = static_cast<int>(tree.nodes.size());
                tree.nodes.emplace_back();
                const int right = static_cast<int>(tree.nodes.size());
                tree.nodes.emplace_back();
                tree.nodes[node].feature = nb.feature;
                tree.nodes[node].threshold = nb.cand.threshold;
                tree.nodes[node].left = left;
                tree.nodes[node].right = right;
                open[node] = 0;
                open.push_back(1);
                open.push_back(1);
                next_frontier.push_back(left);
                next_frontier.push_back(right);
            } else {
                tree.nodes[node].weight = leaf_weight_sums(g_total[node], h_total[node], p.lambda);
                open[node] = 0;
            }
        }

        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t node = node_of_row[i];
            if (!tree.nodes[node].is_leaf())
                node_of_row[i] = data.at(i, tree.nodes[node].feature) <= tree.nodes[node].threshold
                                     ? tree.nodes[node].left
                                     : tree.nodes[node].right;
        }
        frontier = std::move(next_frontier);
    }

    if (!frontier.empty()) {
        // Depth limit reached: remaining open nodes become leaves.
        std::vector<double> g_total(tree.nodes.size(), 0.0), h_total(tree.nodes.size(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t node = node_of_row[i];
            if (!open[node]) continue;
            g_total[node] += grads[i].g;
            h_total[node] += grads[i].h;
        }
        for (int node : frontier) {
            tree.nodes[node].weight = leaf_weight_sums(g_total[node], h_total[node], p.lambda);
            open[node] = 0;
        }
    }
    return tree;
}

}  // namespace

BoostedEnsemble train_exact_greedy(const ProcessDataset& data, const TrainParams& p) {
    require_trainable(data);

    const std::size_t n = data.rows();
    std::vector<std::vector<std::uint32_t>> sorted_order(data.cols());
    for (std::size_t feature = 0; feature < data.cols(); ++feature) {
        auto& order = sorted_order[feature];
        order.resize(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            const double va = data.at(a, feature), vb = data.at(b, feature);
            return va < vb || (va == vb && a < b);
        });
    }

    BoostedEnsemble ens;
    ens.variant = Variant::exact_greedy;
    ens.learning_rate = p.learning_rate;
    ens.n_features = data.cols();
    ens.base_score = init_base_score(data.target());

    std::vector<double> raw(n, ens.base_score);
    std::vector<GradientPair> grads(n);
    for (std::size_t m = 0; m < p.n_trees; ++m) {
        for (std::size_t i = 0; i < n; ++i) grads[i] = logistic_grad_hess(data.target()[i], raw[i]);
        Tree tree = to_preorder(grow_exact_tree(data, sorted_order, grads, p));
        for (std::size_t i = 0; i < n; ++i) raw[i] += p.learning_rate * tree.value(data.row(i));
        ens.trees.push_back(std::move(tree));
    }
    return ens;
}

GossSample goss_sample(const std::vector<GradientPair>& grads, double a, double b,
                       std::uint64_t seed) {
    const std::size_t n = grads.size();
    if (n == 0) throw Error("goss_sample: no rows");
    if (!(a > 0.0 && a < 1.0)) throw Error("goss_sample: a must lie in (0,1)");
    if (!(b > 0.0)) throw Error("goss_sample: b must be positive");
    if (a + b > 1.0) throw Error("goss_sample: a + b must not exceed 1");

    const auto top_n =
        static_cast<std::size_t>(std::ceil(a * static_cast<double>(n) - 1e-9));
    const auto rand_n =
        static_cast<std::size_t>(std::ceil(b * static_cast<double>(n) - 1e-9));
    if (top_n >= n) throw Error("goss_sample: top set consumes every row, nothing to resample");
    if (rand_n > n - top_n) throw Error("goss_sample: rest sample larger than the remainder");

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const double ax = std::fabs(grads[x].g), ay = std::fabs(grads[y].g);
        return ax > ay || (ax == ay && x < y);
    });

    GossSample sample;
    sample.top_indices.assign(order.begin(), order.begin() + top_n);
    std::sort(sample.top_indices.begin(), sample.top_indices.end());

    Rng rng(seed);
    auto picks = sample_without_replacement(n - top_n, rand_n, rng);
    sample.rest_indices.reserve(rand_n);
    for (std::size_t pos : picks) sample.rest_indices.push_back(order[top_n + pos]);
    std::sort(sample.rest_indices.begin(), sample.rest_indices.end());

    sample.multiplier = (1.0 - a) / b;
    return sample;
}

double goss_split_gain(const GossSideSums& left, const GossSideSums& right, double multiplier,
                       std::size_t node_count) {
    if (left.count == 0 || right.count == 0)
        throw Error("goss_split_gain: both sides must hold sampled rows");
    const double l = left.sum_top + multiplier * left.sum_rest;
    const double r = right.sum_top + multiplier * right.sum_rest;
    return (l * l / static_cast<double>(left.count) + r * r / static_cast<double>(right.count)) /
           static_cast<double>(node_count);
}

std::optional<Split> best_split_goss(const std::vector<std::size_t>& rows,
                                     const std::vector<double>& effective_grad,
                                     const ProcessDataset& data) {
    if (rows.empty()) throw Error("best_split_goss: empty row set");
    const std::size_t k = rows.size();
    if (k < 2) return std::nullopt;

    std::optional<Split> best;
    std::vector<std::size_t> sorted_rows(rows);
    std::vector<double> values(k), gs(k);
    for (std::size_t feature = 0; feature < data.cols(); ++feature) {
        std::sort(sorted_rows.begin(), sorted_rows.end(), [&](std::size_t a, std::size_t b) {
            const double va = data.at(a, feature), vb = data.at(b, feature);
            return va < vb || (va == vb && a < b);
        });
        double g_total = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            values[i] = data.at(sorted_rows[i], feature);
            gs[i] = effective_grad[sorted_rows[i]];
            g_total += gs[i];
        }
        const double parent = g_total * g_total / static_cast<double>(k);

        double g_left = 0.0;
        for (std::size_t i = 0; i + 1 < k; ++i) {
            g_left += gs[i];
            if (!(values[i] < values[i + 1])) continue;
            const double g_right = g_total - g_left;
            const double gain = g_left * g_left / static_cast<double>(i + 1) +
                                g_right * g_right / static_cast<double>(k - i - 1) - parent;
            if (gain > 0.0 && (!best || gain > best->gain))
                best = Split{feature, 0.5 * (values[i] + values[i + 1]), gain};
        }
    }
    return best;
}

namespace {

struct GossLeaf {
    int node_id = 0;
    std::vector<std::size_t> rows;  // sampled rows reaching this leaf
    std::optional<Split> best;
    bool alive = true;
};

Tree grow_goss_tree(const ProcessDataset& data, const std::vector<std::size_t>& sampled,
                    const std::vector<double>& eff_g, const std::vector<double>& eff_h,
                    const TrainParams& p) {
    Tree tree;
    tree.nodes.emplace_back();

    std::vector<GossLeaf> leaves;
    leaves.push_back(GossLeaf{0, sampled, best_split_goss(sampled, eff_g, data), true});
    std::size_t n_leaves = 1;

    while (n_leaves < p.max_leaves) {
        // Leaf with the largest split gain; earlier-created leaves win ties.
        int pick = -1;
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            if (!leaves[i].alive || !leaves[i].best) continue;
            if (pick < 0 || leaves[i].best->gain > leaves[pick].best->gain)
                pick = static_cast<int>(i);
        }
        if (pick < 0) break;

        GossLeaf& parent = leaves[pick];
        const Split split = *parent.best;
        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t idx : parent.rows) {
            if (data.at(idx, split.feature) <= split.threshold)
                left_rows.push_back(idx);
            else
                right_rows.push_back(idx);
        }

        const int left = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        const int right = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[parent.node_id].feature = static_cast<int>(split.feature);
        tree.nodes[parent.node_id].threshold = split.threshold;
        tree.nodes[parent.node_id].left = left;
        tree.nodes[parent.node_id].right = right;
        parent.alive = false;

        leaves.push_back(GossLeaf{left, std::move(left_rows), std::nullopt, true});
        leaves.back().best = best_split_goss(leaves.back().rows, eff_g, data);
        leaves.push_back(GossLeaf{right, std::move(right_rows), std::nullopt, true});
        leaves.back().best = best_split_goss(leaves.back().rows, eff_g, data);
        ++n_leaves;
    }

    for (const GossLeaf& leaf : leaves) {
        if (!leaf.alive) continue;
        double g = 0.0, h = 0.0;
        for (std::size_t idx : leaf.rows) {
            g += eff_g[idx];
            h += eff_h[idx];
        }
        tree.nodes[leaf.node_id].weight = leaf_weight_sums(g, h, p.lambda);
    }
    return tree;
}

}  // namespace

BoostedEnsemble train_goss_leafwise(const ProcessDataset& data, const TrainParams& p) {
    require_trainable(data);
    if (p.max_leaves < 1) throw Error("train: max_leaves must be >= 1");

    const std::size_t n = data.rows();
    BoostedEnsemble ens;
    ens.variant = Variant::goss_leafwise;
    ens.learning_rate = p.learning_rate;
    ens.n_features = data.cols();
    ens.base_score = init_base_score(data.target());

    std::vector<double> raw(n, ens.base_score);
    std::vector<GradientPair> grads(n);
    std::vector<double> eff_g(n), eff_h(n);
    for (std::size_t m = 0; m < p.n_trees; ++m) {
        for (std::size_t i = 0; i < n; ++i) grads[i] = logistic_grad_hess(data.target()[i], raw[i]);

        GossSample sample = goss_sample(grads, p.goss_a, p.goss_b, derive_seed(p.seed, m));
        std::vector<std::size_t> sampled;
        sampled.reserve(sample.top_indices.size() + sample.rest_indices.size());
        for (std::size_t idx : sample.top_indices) {
            eff_g[idx] = grads[idx].g;
            eff_h[idx] = grads[idx].h;
            sampled.push_back(idx);
        }
        for (std::size_t idx : sample.rest_indices) {
            eff_g[idx] = sample.multiplier * grads[idx].g;
            eff_h[idx] = sample.multiplier * grads[idx].h;
            sampled.push_back(idx);
        }
        std::sort(sampled.begin(), sampled.end());

        Tree tree = to_preorder(grow_goss_tree(data, sampled, eff_g, eff_h, p));
        for (std::size_t i = 0; i < n; ++i) raw[i] += p.learning_rate * tree.value(data.row(i));
        ens.trees.push_back(std::move(tree));
    }
    return ens;
}

BoostedEnsemble train(const ProcessDataset& data, const TrainParams& p) {
    return p.variant == Variant::exact_greedy ? train_exact_greedy(data, p)
                                              : train_goss_leafwise(data, p);
}

ConfusionMatrix evaluate(const BoostedEnsemble& ens, const ProcessDataset& ds) {
    if (ds.rows() == 0) throw Error("evaluate: empty dataset");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        const int predicted = ens.label(ds.row(i));
        const int actual = ds.target()[i];
        if (predicted == 1)
            (actual == 1 ? cm.tp : cm.fp) += 1;
        else
            (actual == 1 ? cm.fn : cm.tn) += 1;
    }
    return cm;
}

CvResult cross_validate(const ProcessDataset& data, const TrainParams& params, std::size_t k,
                        std::uint64_t seed) {
    if (k < 2) throw Error("cross_validate: k must be >= 2");
    CvResult result;
    double sum = 0.0;
    std::size_t valid = 0;
    for (const CvFold& fold : cv_folds(data, k, seed)) {
        CvResult::Fold entry;
        const std::size_t zeros = fold.train.count_label(0);
        if (zeros == 0 || zeros == fold.train.rows()) {
            entry.degenerate = true;
            entry.accuracy = std::numeric_limits<double>::quiet_NaN();
        } else {
            BoostedEnsemble ens = train(fold.train, params);
            entry.accuracy = evaluate(ens, fold.holdout).accuracy();
            sum += entry.accuracy;
            ++valid;
        }
        result.folds.push_back(entry);
    }
    result.mean_accuracy =
        valid ? sum / static_cast<double>(valid) : std::numeric_limits<double>::quiet_NaN();
    return result;
}

void save_model(const BoostedEnsemble& ens, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write model file: " + path.string());
    out << "yieldctl-model v1\n";
    out << "variant " << variant_name(ens.variant) << '\n';
    out << "base_score " << format_double(ens.base_score) << '\n';
    out << "learning_rate " << format_double(ens.learning_rate) << '\n';
    out << "n_features " << ens.n_features << '\n';
    out << "n_trees " << ens.trees.size() << '\n';
    for (std::size_t t = 0; t < ens.trees.size(); ++t) {
        const Tree& tree = ens.trees[t];
        out << "tree " << t << ' ' << tree.nodes.size() << '\n';
        for (const TreeNode& node : tree.nodes) {
            if (node.is_leaf())
                out << "leaf " << format_double(node.weight) << '\n';
            else
                out << "split " << node.feature << ' ' << format_double(node.threshold) << ' '
                    << node.left << ' ' << node.right << '\n';
        }
    }
    if (!out) throw Error("write failed: " + path.string());
}

BoostedEnsemble load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file: " + path.string());

    auto expect = [&](const std::string& want) {
        std::string token;
        if (!(in >> token) || token != want)
            throw Error("malformed model file " + path.string() + ": expected '" + want + "'");
    };

    expect("yieldctl-model");
    expect("v1");

    BoostedEnsemble ens;
    std::string token;
    expect("variant");
    in >> token;
    ens.variant = variant_from_name(token);
    expect("base_score");
    in >> token;
    ens.base_score = parse_double_strict(token, "in model base_score");
    expect("learning_rate");
    in >> token;
    ens.learning_rate = parse_double_strict(token, "in model learning_rate");
    expect("n_features");
    in >> ens.n_features;
    std::size_t n_trees = 0;
    expect("n_trees");
    in >> n_trees;
    if (!in) throw Error("malformed model header in " + path.string());

    for (std::size_t t = 0; t < n_trees; ++t) {
        expect("tree");
        std::size_t index = 0, n_nodes = 0;
        in >> index >> n_nodes;
        if (!in || index != t || n_nodes == 0)
            throw Error("malformed tree header in " + path.string());
        Tree tree;
        tree.nodes.resize(n_nodes);
        for (std::size_t id = 0; id < n_nodes; ++id) {
            in >> token;
            if (token == "leaf") {
                in >> token;
                tree.nodes[id].weight = parse_double_strict(token, "in model leaf");
            } else if (token == "split") {
                TreeNode& node = tree.nodes[id];
                in >> node.feature >> token;
                node.threshold = parse_double_strict(token, "in model threshold");
                in >> node.left >> node.right;
                if (!in || node.feature < 0 ||
                    static_cast<std::size_t>(node.feature) >= ens.n_features ||
                    node.left <= static_cast<int>(id) || node.right <= static_cast<int>(id) ||
                    node.left >= static_cast<int>(n_nodes) ||
                    node.right >= static_cast<int>(n_nodes))
                    throw Error("malformed split node in " + path.string());
            } else {
                throw Error("malformed node tag '" + token + "' in " + path.string());
            }
        }
        ens.trees.push_back(std::move(tree));
    }
    return ens;
}

double mean_log_loss(const BoostedEnsemble& ens, const ProcessDataset& ds) {
    if (ds.rows() == 0) throw Error("mean_log_loss: empty dataset");
    auto softplus = [](double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); };
    double sum = 0.0;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        const double raw = ens.raw(ds.row(i));
        sum += ds.target()[i] == 1 ? softplus(-raw) : softplus(raw);
    }
    return sum / static_cast<double>(ds.rows());
}

}  // namespace yieldctl
