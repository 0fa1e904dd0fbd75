#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace yieldctl {

/// Immutable tabular container for process data. Rows are products, columns
/// are process features, target is 1 for normal products and 0 for defective
/// ones. All values are finite; feature names are unique.
class ProcessDataset {
public:
    ProcessDataset() = default;
    ProcessDataset(std::vector<std::string> feature_names, std::vector<double> values,
                   std::vector<int> target);

    std::size_t rows() const { return target_.size(); }
    std::size_t cols() const { return feature_names_.size(); }

    const std::vector<std::string>& feature_names() const { return feature_names_; }
    const std::vector<int>& target() const { return target_; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * cols(), cols()};
    }
    double at(std::size_t i, std::size_t j) const { return values_[i * cols() + j]; }
    const std::vector<double>& values() const { return values_; }

    std::size_t feature_index(const std::string& name) const;  // throws if unknown
    std::vector<double> column(std::size_t j) const;

    std::size_t count_label(int label) const;

private:
    std::vector<std::string> feature_names_;
    std::vector<double> values_;  // row-major, rows() x cols()
    std::vector<int> target_;
};

struct QualityReport {
    std::vector<std::size_t> missing_count;  // per feature
    std::vector<std::size_t> outlier_count;  // per feature, beyond k*IQR fences
    std::size_t total_rows = 0;
};

struct SplitPair {
    ProcessDataset train;
    ProcessDataset test;
    std::uint64_t seed = 0;
};

struct CvFold {
    ProcessDataset train;
    ProcessDataset holdout;
    std::vector<std::size_t> holdout_rows;  // indices into the source dataset
};

/// Loads a KAMP-style CSV: header row, comma-separated, every column numeric,
/// the target column holding only 0/1. Missing or non-numeric cells are hard
/// errors reported with their row and column.
ProcessDataset load_csv(const std::filesystem::path& path, const std::string& target_column);

void save_csv(const ProcessDataset& ds, const std::filesystem::path& path,
              const std::string& target_column);

/// Column projection in `keep` order; target is carried over unchanged.
ProcessDataset select_features(const ProcessDataset& ds, const std::vector<std::string>& keep);

/// Keeps rows for which the predicate returns true. Exposed for excluding
/// products by criteria outside the feature schema (e.g. process index).
ProcessDataset filter_rows(const ProcessDataset& ds,
                           const std::function<bool(std::span<const double>, int)>& keep);

/// Per-feature missing and IQR-fence counts. Reporting only, never mutates.
QualityReport quality_check(const ProcessDataset& ds, double iqr_k = 1.5);

/// Uniform random partition without replacement. Test row count is
/// round(test_fraction * rows); row order within each half follows the source.
SplitPair split(const ProcessDataset& ds, double test_fraction, std::uint64_t seed);

/// k disjoint holdouts covering all rows, sizes differing by at most one.
std::vector<CvFold> cv_folds(const ProcessDataset& ds, std::size_t k, std::uint64_t seed);

/// Row-subset helper used by split/cv_folds; indices refer to source rows.
ProcessDataset take_rows(const ProcessDataset& ds, const std::vector<std::size_t>& indices);

/// Appends rows (with labels) to a copy of the dataset.
ProcessDataset append_rows(const ProcessDataset& ds, const std::vector<std::vector<double>>& rows,
                           const std::vector<int>& labels);

/// Type-7 (linear interpolation) quantile of a sample; values need not be sorted.
double quantile_type7(std::vector<double> values, double p);

}  // namespace yieldctl
