#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "yieldctl/dataset.hpp"
#include "yieldctl/rng.hpp"

namespace testutil {

// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("yieldctl_" + tag + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Row-major dataset builder for tests.
inline yieldctl::ProcessDataset make_dataset(std::size_t n_features,
                                             const std::vector<std::vector<double>>& rows,
                                             const std::vector<int>& target) {
    std::vector<std::string> names;
    for (std::size_t j = 0; j < n_features; ++j) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "f%02zu", j);
        names.emplace_back(buf);
    }
    std::vector<double> values;
    for (const auto& row : rows) values.insert(values.end(), row.begin(), row.end());
    return yieldctl::ProcessDataset(std::move(names), std::move(values), target);
}

inline yieldctl::ProcessDataset random_dataset(std::size_t rows, std::size_t cols,
                                               yieldctl::Rng& rng, double label_bias = 0.5) {
    std::vector<std::vector<double>> data(rows, std::vector<double>(cols));
    std::vector<int> target(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) data[i][j] = rng.uniform(-2.0, 2.0);
        target[i] = rng.uniform01() < label_bias ? 1 : 0;
    }
    return make_dataset(cols, data, target);
}

}  // namespace testutil
