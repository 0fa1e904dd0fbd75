#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "yieldctl/dataset.hpp"

namespace yieldctl {

struct GradientPair {
    double g = 0.0;  // first-order gradient
    double h = 0.0;  // second-order gradient, >= 0 for logistic loss
};

/// Binary tree stored as a flat pre-order node list; feature < 0 marks a leaf.
/// Routing rule: value <= threshold goes left.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double weight = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    double value(std::span<const double> row) const {
        int at = 0;
        while (!nodes[at].is_leaf())
            at = row[nodes[at].feature] <= nodes[at].threshold ? nodes[at].left : nodes[at].right;
        return nodes[at].weight;
    }
};

enum class Variant { exact_greedy, goss_leafwise };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

/// Additive model: raw = base_score + learning_rate * sum of tree outputs;
/// probability = sigmoid(raw); label = probability >= 0.5.
struct BoostedEnsemble {
    double base_score = 0.0;
    double learning_rate = 0.1;
    Variant variant = Variant::exact_greedy;
    std::size_t n_features = 0;
    std::vector<Tree> trees;

    double raw(std::span<const double> row) const;
    double probability(std::span<const double> row) const;
    int label(std::span<const double> row) const;
};

struct Prediction {
    double raw = 0.0;
    double probability = 0.5;
    int label = 1;
};

Prediction predict(const BoostedEnsemble& ens, std::span<const double> row);

struct ConfusionMatrix {
    // Positive class is "normal" (target 1).
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    double accuracy() const { return static_cast<double>(tp + tn) / static_cast<double>(total()); }
    double accuracy_percent() const { return 100.0 * accuracy(); }
};

struct TrainParams {
    Variant variant = Variant::exact_greedy;
    std::size_t n_trees = 100;
    std::size_t max_depth = 6;    // exact-greedy, level-wise
    std::size_t max_leaves = 31;  // goss, leaf-wise
    double learning_rate = 0.1;
    double lambda = 1.0;
    double gamma = 0.0;
    double min_child_weight = 1.0;
    double goss_a = 0.2;
    double goss_b = 0.1;
    std::uint64_t seed = 0;
};

double sigmoid(double x);

/// p = sigmoid(raw); g = p - label; h = p (1 - p).
GradientPair logistic_grad_hess(int label, double raw);

/// Log-odds of the positive rate, clamped to [-15, 15].
double init_base_score(const std::vector<int>& labels);

struct Split {
    std::size_t feature = 0;
    double threshold = 0.0;
    double gain = 0.0;
};

/// Exact greedy split search: for every feature, every midpoint between
/// consecutive distinct sorted values is scored with
///   gain = 1/2 [G_L^2/(H_L+lambda) + G_R^2/(H_R+lambda) - G^2/(H+lambda)] - gamma
/// and the max positive-gain split is returned (ties: lower feature index,
/// then lower threshold). Returns nullopt when no positive-gain split exists.
std::optional<Split> best_split_exact(const std::vector<std::size_t>& rows,
                                      const std::vector<GradientPair>& grads,
                                      const ProcessDataset& data, double lambda, double gamma);

/// -G/(H+lambda) for explicit sums. Throws when H + lambda <= 0.
double leaf_weight_sums(double grad_sum, double hess_sum, double lambda);

double leaf_weight(const std::vector<std::size_t>& rows, const std::vector<GradientPair>& grads,
                   double lambda);

struct GossSample {
    std::vector<std::size_t> top_indices;   // A: rows with the largest |g|
    std::vector<std::size_t> rest_indices;  // B: uniform sample of the remainder
    double multiplier = 1.0;                // (1-a)/b, amplifies B in gain sums
};

/// Sorts rows by |g| descending (ties: lower index first), keeps the top
/// ceil(a*N) as A and samples ceil(b*N) of the remainder uniformly without
/// replacement as B.
GossSample goss_sample(const std::vector<GradientPair>& grads, double a, double b,
                       std::uint64_t seed);

struct GossSideSums {
    double sum_top = 0.0;       // sum of gradients over A rows on this side
    double sum_rest = 0.0;      // sum of gradients over B rows on this side
    std::size_t count = 0;      // sampled rows on this side
};

/// Information gain of one candidate split over the GOSS-sampled set:
///   V = [ (sumA_l + m*sumB_l)^2 / n_l + (sumA_r + m*sumB_r)^2 / n_r ] / n.
double goss_split_gain(const GossSideSums& left, const GossSideSums& right, double multiplier,
                       std::size_t node_count);

/// Variance-gain split search over a sampled row set with per-row effective
/// gradients (B rows pre-multiplied). gain is the total squared-sum reduction
///   G_L^2/n_L + G_R^2/n_R - G^2/n,
/// comparable across leaves for leaf-wise growth. Same tie rules as
/// best_split_exact.
std::optional<Split> best_split_goss(const std::vector<std::size_t>& rows,
                                     const std::vector<double>& effective_grad,
                                     const ProcessDataset& data);

BoostedEnsemble train_exact_greedy(const ProcessDataset& train, const TrainParams& params);
BoostedEnsemble train_goss_leafwise(const ProcessDataset& train, const TrainParams& params);
BoostedEnsemble train(const ProcessDataset& train, const TrainParams& params);

ConfusionMatrix evaluate(const BoostedEnsemble& ens, const ProcessDataset& ds);

struct CvResult {
    struct Fold {
        double accuracy = 0.0;
        bool degenerate = false;  // training part lacked one of the classes
    };
    std::vector<Fold> folds;
    double mean_accuracy = 0.0;  // over non-degenerate folds
};

CvResult cross_validate(const ProcessDataset& train, const TrainParams& params, std::size_t k,
                        std::uint64_t seed);

/// Plain-text model format; round-trips predictions bit-exactly.
void save_model(const BoostedEnsemble& ens, const std::filesystem::path& path);
BoostedEnsemble load_model(const std::filesystem::path& path);

/// Mean logistic log-loss of the ensemble on a dataset (training diagnostics).
double mean_log_loss(const BoostedEnsemble& ens, const ProcessDataset& ds);

}  // namespace yieldctl
