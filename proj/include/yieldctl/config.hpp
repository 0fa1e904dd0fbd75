#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace yieldctl {

/// Plain-text key-value configuration: one `section.key = value` per line,
/// '#' comments, repeated keys and comma-separated values both append to a
/// list. Consumers mark keys as read so typos can be reported.
class ConfigFile {
public:
    static ConfigFile parse(const std::filesystem::path& path);
    static ConfigFile parse_text(const std::string& text, const std::string& origin = "<memory>");

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::size_t get_size(const std::string& key, std::size_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<std::string> get_list(const std::string& key) const;  // empty when absent
    std::vector<double> get_double_list(const std::string& key) const;

    /// Keys present in the file but never read through a getter.
    std::vector<std::string> unread_keys() const;

private:
    std::string origin_;
    std::map<std::string, std::vector<std::string>> entries_;
    mutable std::map<std::string, bool> read_;
};

}  // namespace yieldctl
