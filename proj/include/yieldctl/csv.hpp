#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace yieldctl {

/// Shortest decimal representation that parses back to the identical double.
std::string format_double(double value);

/// Fixed two-decimal display with round-half-up, e.g. 0.20597 -> "0.21".
std::string format_percent2(double value);

double parse_double_strict(const std::string& token, const std::string& context);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column_index(const std::string& name) const;  // throws if absent
};

/// Reads a comma-separated file with a header row. Handles CRLF and a UTF-8
/// BOM; no quoting support (field values must not contain commas).
CsvTable read_csv(const std::filesystem::path& path);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace yieldctl
