#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "yieldctl/config.hpp"
#include "yieldctl/dataset.hpp"
#include "yieldctl/error.hpp"
#include "yieldctl/gbdt.hpp"
#include "yieldctl/smote.hpp"
#include "yieldctl/synth.hpp"

namespace yieldctl {

enum class Stage { config, synth, ingest, oversample, train, explain, ranges, validate, report };

std::string stage_name(Stage stage);

struct StageError : Error {
    Stage stage;
    StageError(Stage s, const std::string& message) : Error(message), stage(s) {}
};

enum class ShapEstimator { tree_exact, subset_exact, sampled };

/// Everything a full pipeline run needs; loaded from a key-value config file.
/// All randomness flows from the seeds recorded here.
struct PipelineConfig {
    std::optional<std::filesystem::path> input;  // CSV path; absent -> synthetic source
    std::optional<SynthConfig> synth;
    std::string target_column = "PassOrFail";
    std::vector<std::string> keep;  // empty -> all feature columns
    double iqr_k = 1.5;

    double test_fraction = 0.5;
    std::uint64_t split_seed = 1;

    SmoteConfig smote{.k = 5, .target_count = std::nullopt, .seed = 2};

    TrainParams model;
    bool cv_enabled = true;
    std::size_t cv_k = 3;
    std::uint64_t cv_seed = 3;

    ShapEstimator estimator = ShapEstimator::tree_exact;
    std::size_t shap_background = 128;
    std::size_t shap_instances = 200;
    std::size_t shap_permutations = 2000;
    std::uint64_t shap_seed = 4;

    double selection_threshold = 0.70;

    std::vector<double> alphas{0.05, 0.1, 0.2};
    std::size_t ice_max_instances = 500;
    std::uint64_t ice_seed = 5;

    bool plots = false;

    static PipelineConfig load(const std::filesystem::path& path);
    static PipelineConfig from_config(const ConfigFile& file);

    /// Rederives every stage seed from one master seed (--seed flag).
    void reseed(std::uint64_t master);
};

namespace artifact {
inline constexpr const char* data = "data.csv";
inline constexpr const char* ground_truth = "ground_truth.csv";
inline constexpr const char* quality = "quality_report.csv";
inline constexpr const char* train_split = "split_train.csv";
inline constexpr const char* test_split = "split_test.csv";
inline constexpr const char* oversampled = "train_oversampled.csv";
inline constexpr const char* model = "model.txt";
inline constexpr const char* eval = "eval_test.csv";
inline constexpr const char* cv = "cv.csv";
inline constexpr const char* phi = "phi.csv";
inline constexpr const char* shapley = "shapley.csv";
inline constexpr const char* ice_curves = "ice_curves.csv";
inline constexpr const char* ranges = "ranges.csv";
inline constexpr const char* validation = "validation.csv";
inline constexpr const char* validation_table = "validation.txt";
inline constexpr const char* summary = "summary.txt";
}  // namespace artifact

// Each stage reads its prerequisites from out_dir and writes its artifacts
// there, so a full run and a stage-by-stage run produce identical files.
void stage_synth(const PipelineConfig& cfg, const std::filesystem::path& out_dir);
void stage_ingest(const PipelineConfig& cfg, const std::filesystem::path& out_dir);
void stage_oversample(const PipelineConfig& cfg, const std::filesystem::path& out_dir);
void stage_train(const PipelineConfig& cfg, const std::filesystem::path& out_dir);
void stage_explain(const PipelineConfig& cfg, const std::filesystem::path& out_dir);
void stage_ranges(const PipelineConfig& cfg, const std::filesystem::path& out_dir);
void stage_validate(const PipelineConfig& cfg, const std::filesystem::path& out_dir);
void stage_report(const PipelineConfig& cfg, const std::filesystem::path& out_dir);

/// Runs every stage in order (synth only when configured).
void run_pipeline(const PipelineConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace yieldctl
