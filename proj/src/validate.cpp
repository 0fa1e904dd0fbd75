#include "yieldctl/validate.hpp"

#include <cstdio>
#include <sstream>

#include "yieldctl/csv.hpp"
#include "yieldctl/error.hpp"

namespace yieldctl {

ProcessDataset filter_in_range(const ProcessDataset& ds, const std::vector<ControlRange>& ranges) {
    for (const ControlRange& range : ranges)
        if (range.feature >= ds.cols())
            throw Error("filter_in_range: range references unknown feature index " +
                        std::to_string(range.feature));

    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        bool inside = true;
        for (const ControlRange& range : ranges) {
            const double value = ds.at(i, range.feature);
            if (value < range.lower || value > range.upper) {
                inside = false;
                break;
            }
        }
        if (inside) kept.push_back(i);
    }
    return take_rows(ds, kept);
}

DefectRate defect_rate(const ProcessDataset& ds) {
    DefectRate rate;
    rate.defect = ds.count_label(0);
    rate.normal = ds.rows() - rate.defect;
    if (ds.rows() > 0)
        rate.percent = 100.0 * static_cast<double>(rate.defect) / static_cast<double>(ds.rows());
    return rate;
}

std::string format_rate(const DefectRate& rate) {
    return rate.percent ? format_percent2(*rate.percent) : "N/A";
}

ValidationReport validation_report(
    const ProcessDataset& test,
    const std::vector<std::pair<double, std::vector<ControlRange>>>& ranges_per_alpha) {
    ValidationReport report;
    report.baseline = defect_rate(test);
    for (const auto& [alpha, ranges] : ranges_per_alpha) {
        ValidationRow row;
        row.alpha = alpha;
        row.rate = defect_rate(filter_in_range(test, ranges));
        row.improved = row.rate.percent && report.baseline.percent &&
                       *row.rate.percent < *report.baseline.percent;
        report.per_alpha.push_back(row);
    }
    return report;
}

std::string render_validation_table(const ValidationReport& report) {
    std::ostringstream out;
    char line[128];
    std::snprintf(line, sizeof(line), "%-14s %10s %10s %14s\n", "", "Normal", "Defect",
                  "Defect rate (%)");
    out << line;
    for (const ValidationRow& row : report.per_alpha) {
        char label[32];
        std::snprintf(label, sizeof(label), "alpha = %g", row.alpha);
        if (row.rate.total() == 0)
            std::snprintf(line, sizeof(line), "%-14s %10s %10s %14s\n", label, "N/A", "N/A", "N/A");
        else
            std::snprintf(line, sizeof(line), "%-14s %10zu %10zu %14s\n", label, row.rate.normal,
                          row.rate.defect, format_rate(row.rate).c_str());
        out << line;
    }
    std::snprintf(line, sizeof(line), "%-14s %10zu %10zu %14s\n", "Original Data",
                  report.baseline.normal, report.baseline.defect,
                  format_rate(report.baseline).c_str());
    out << line;
    return out.str();
}

}  // namespace yieldctl
