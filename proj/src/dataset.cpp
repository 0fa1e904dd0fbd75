#include "yieldctl/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "yieldctl/csv.hpp"
#include "yieldctl/error.hpp"
#include "yieldctl/rng.hpp"

namespace yieldctl {

ProcessDataset::ProcessDataset(std::vector<std::string> feature_names, std::vector<double> values,
                               std::vector<int> target)
    : feature_names_(std::move(feature_names)),
      values_(std::move(values)),
      target_(std::move(target)) {
    if (feature_names_.empty() && !target_.empty())
        throw Error("dataset has rows but no feature columns");
    const std::size_t n_cols = feature_names_.size();
    if (n_cols != 0 && values_.size() != target_.size() * n_cols)
        throw Error("dataset matrix is not rectangular");
    std::unordered_set<std::string> seen;
    for (const auto& name : feature_names_)
        if (!seen.insert(name).second) throw Error("duplicate feature name: " + name);
    for (int label : target_)
        if (label != 0 && label != 1) throw Error("target value outside {0,1}");
    for (double v : values_)
        if (!std::isfinite(v)) throw Error("non-finite feature value in dataset");
}

std::size_t ProcessDataset::feature_index(const std::string& name) const {
    for (std::size_t j = 0; j < feature_names_.size(); ++j)
        if (feature_names_[j] == name) return j;
    throw Error("unknown feature: " + name);
}

std::vector<double> ProcessDataset::column(std::size_t j) const {
    std::vector<double> out(rows());
    for (std::size_t i = 0; i < rows(); ++i) out[i] = at(i, j);
    return out;
}

std::size_t ProcessDataset::count_label(int label) const {
    return static_cast<std::size_t>(std::count(target_.begin(), target_.end(), label));
}

ProcessDataset load_csv(const std::filesystem::path& path, const std::string& target_column) {
    CsvTable table = read_csv(path);

    std::size_t target_col = 0;
    bool found = false;
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        if (table.header[j] == target_column) {
            target_col = j;
            found = true;
            break;
        }
    }
    if (!found) throw Error("target column '" + target_column + "' not found in " + path.string());

    std::vector<std::string> names;
    for (std::size_t j = 0; j < table.header.size(); ++j)
        if (j != target_col) names.push_back(table.header[j]);

    std::vector<double> values;
    values.reserve(table.rows.size() * names.size());
    std::vector<int> target;
    target.reserve(table.rows.size());

    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        for (std::size_t j = 0; j < row.size(); ++j) {
            const std::string where =
                "at row " + std::to_string(i + 1) + ", column '" + table.header[j] + "'";
            if (j == target_col) {
                double t = parse_double_strict(row[j], where);
                if (t != 0.0 && t != 1.0)
                    throw Error("target column '" + target_column + "' is not binary " + where);
                target.push_back(static_cast<int>(t));
            } else {
                values.push_back(parse_double_strict(row[j], where));
            }
        }
    }
    return ProcessDataset(std::move(names), std::move(values), std::move(target));
}

void save_csv(const ProcessDataset& ds, const std::filesystem::path& path,
              const std::string& target_column) {
    std::vector<std::string> header;
    header.push_back(target_column);
    for (const auto& name : ds.feature_names()) header.push_back(name);

    std::vector<std::vector<std::string>> rows;
    rows.reserve(ds.rows());
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        std::vector<std::string> row;
        row.reserve(ds.cols() + 1);
        row.push_back(std::to_string(ds.target()[i]));
        for (std::size_t j = 0; j < ds.cols(); ++j) row.push_back(format_double(ds.at(i, j)));
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

ProcessDataset select_features(const ProcessDataset& ds, const std::vector<std::string>& keep) {
    std::vector<std::size_t> cols;
    cols.reserve(keep.size());
    for (const auto& name : keep) cols.push_back(ds.feature_index(name));

    std::vector<double> values;
    values.reserve(ds.rows() * cols.size());
    for (std::size_t i = 0; i < ds.rows(); ++i)
        for (std::size_t c : cols) values.push_back(ds.at(i, c));
    return ProcessDataset(keep, std::move(values), ds.target());
}

ProcessDataset filter_rows(const ProcessDataset& ds,
                           const std::function<bool(std::span<const double>, int)>& keep) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < ds.rows(); ++i)
        if (keep(ds.row(i), ds.target()[i])) rows.push_back(i);
    return take_rows(ds, rows);
}

double quantile_type7(std::vector<double> values, double p) {
    if (values.empty()) throw Error("quantile of empty sample");
    std::sort(values.begin(), values.end());
    const double h = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= values.size()) return values.back();
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

QualityReport quality_check(const ProcessDataset& ds, double iqr_k) {
    if (iqr_k <= 0.0) throw Error("iqr_k must be positive");
    QualityReport report;
    report.total_rows = ds.rows();
    report.missing_count.assign(ds.cols(), 0);
    report.outlier_count.assign(ds.cols(), 0);

    for (std::size_t j = 0; j < ds.cols(); ++j) {
        std::vector<double> col = ds.column(j);
        if (col.empty()) continue;
        const double q1 = quantile_type7(col, 0.25);
        const double q3 = quantile_type7(col, 0.75);
        const double iqr = q3 - q1;
        const double lo = q1 - iqr_k * iqr;
        const double hi = q3 + iqr_k * iqr;
        for (double v : col) {
            if (!std::isfinite(v))
                ++report.missing_count[j];  // unreachable post-load; kept for completeness
            else if (v < lo || v > hi)
                ++report.outlier_count[j];
        }
    }
    return report;
}

ProcessDataset take_rows(const ProcessDataset& ds, const std::vector<std::size_t>& indices) {
    std::vector<double> values;
    values.reserve(indices.size() * ds.cols());
    std::vector<int> target;
    target.reserve(indices.size());
    for (std::size_t i : indices) {
        auto row = ds.row(i);
        values.insert(values.end(), row.begin(), row.end());
        target.push_back(ds.target()[i]);
    }
    return ProcessDataset(ds.feature_names(), std::move(values), std::move(target));
}

ProcessDataset append_rows(const ProcessDataset& ds, const std::vector<std::vector<double>>& rows,
                           const std::vector<int>& labels) {
    if (rows.size() != labels.size()) throw Error("append_rows: rows/labels length mismatch");
    std::vector<double> values = ds.values();
    std::vector<int> target = ds.target();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != ds.cols()) throw Error("append_rows: dimension mismatch");
        values.insert(values.end(), rows[i].begin(), rows[i].end());
        target.push_back(labels[i]);
    }
    return ProcessDataset(ds.feature_names(), std::move(values), std::move(target));
}

SplitPair split(const ProcessDataset& ds, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw Error("test_fraction must lie in (0,1)");
    if (ds.rows() < 2) throw Error("split needs at least 2 rows");

    const auto n = ds.rows();
    const auto test_n =
        static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));

    Rng rng(seed);
    std::vector<std::size_t> test_idx = sample_without_replacement(n, test_n, rng);
    std::vector<std::size_t> train_idx;
    train_idx.reserve(n - test_n);
    std::set<std::size_t> in_test(test_idx.begin(), test_idx.end());
    for (std::size_t i = 0; i < n; ++i)
        if (!in_test.count(i)) train_idx.push_back(i);

    return SplitPair{take_rows(ds, train_idx), take_rows(ds, test_idx), seed};
}

std::vector<CvFold> cv_folds(const ProcessDataset& ds, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw Error("cv_folds needs k >= 2");
    if (ds.rows() < k) throw Error("cv_folds needs at least k rows");

    std::vector<std::size_t> order(ds.rows());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(seed);
    shuffle(order, rng);

    const std::size_t base = ds.rows() / k;
    const std::size_t extra = ds.rows() % k;

    std::vector<CvFold> folds;
    std::size_t cursor = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = base + (f < extra ? 1 : 0);
        std::vector<std::size_t> holdout(order.begin() + cursor, order.begin() + cursor + size);
        cursor += size;
        std::sort(holdout.begin(), holdout.end());

        std::vector<std::size_t> train;
        train.reserve(ds.rows() - size);
        std::set<std::size_t> in_holdout(holdout.begin(), holdout.end());
        for (std::size_t i = 0; i < ds.rows(); ++i)
            if (!in_holdout.count(i)) train.push_back(i);

        folds.push_back(CvFold{take_rows(ds, train), take_rows(ds, holdout), holdout});
    }
    return folds;
}

}  // namespace yieldctl
