#include "yieldctl/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "yieldctl/csv.hpp"
#include "yieldctl/error.hpp"

namespace yieldctl {

namespace {

std::string trim(const std::string& text) {
    const std::size_t b = text.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const std::size_t e = text.find_last_not_of(" \t");
    return text.substr(b, e - b + 1);
}

}  // namespace

ConfigFile ConfigFile::parse(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str(), path.string());
}

ConfigFile ConfigFile::parse_text(const std::string& text, const std::string& origin) {
    ConfigFile cfg;
    cfg.origin_ = origin;

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = line.substr(eq + 1);
        if (key.empty())
            throw Error(origin + ":" + std::to_string(line_no) + ": empty key");

        auto& slot = cfg.entries_[key];
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = value.find(',', start);
            slot.push_back(trim(value.substr(
                start, comma == std::string::npos ? comma : comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        // A bare `key =` line clears back to empty (single empty token dropped).
        while (!slot.empty() && slot.back().empty()) slot.pop_back();
    }
    return cfg;
}

bool ConfigFile::has(const std::string& key) const {
    auto it = entries_.find(key);
    return it != entries_.end() && !it->second.empty();
}

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
    read_[key] = true;
    auto it = entries_.find(key);
    if (it == entries_.end() || it->second.empty()) return fallback;
    if (it->second.size() > 1) throw Error(origin_ + ": key '" + key + "' given more than once");
    return it->second.front();
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
    const std::string raw = get_string(key, "");
    if (raw.empty()) return fallback;
    return parse_double_strict(raw, "for config key '" + key + "'");
}

std::uint64_t ConfigFile::get_u64(const std::string& key, std::uint64_t fallback) const {
    const std::string raw = get_string(key, "");
    if (raw.empty()) return fallback;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw.c_str(), &end, 10);
    if (end == raw.c_str() || *end != '\0')
        throw Error(origin_ + ": key '" + key + "' is not an integer: " + raw);
    return value;
}

std::size_t ConfigFile::get_size(const std::string& key, std::size_t fallback) const {
    return static_cast<std::size_t>(get_u64(key, fallback));
}

bool ConfigFile::get_bool(const std::string& key, bool fallback) const {
    const std::string raw = get_string(key, "");
    if (raw.empty()) return fallback;
    if (raw == "true" || raw == "1" || raw == "yes") return true;
    if (raw == "false" || raw == "0" || raw == "no") return false;
    throw Error(origin_ + ": key '" + key + "' is not a boolean: " + raw);
}

std::vector<std::string> ConfigFile::get_list(const std::string& key) const {
    read_[key] = true;
    auto it = entries_.find(key);
    return it == entries_.end() ? std::vector<std::string>{} : it->second;
}

std::vector<double> ConfigFile::get_double_list(const std::string& key) const {
    std::vector<double> out;
    for (const std::string& item : get_list(key))
        out.push_back(parse_double_strict(item, "for config key '" + key + "'"));
    return out;
}

std::vector<std::string> ConfigFile::unread_keys() const {
    std::vector<std::string> out;
    for (const auto& [key, values] : entries_)
        if (!read_.count(key)) out.push_back(key);
    return out;
}

}  // namespace yieldctl
