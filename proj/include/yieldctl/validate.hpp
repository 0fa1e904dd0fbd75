#pragma once

#include <optional>
#include <string>
#include <vector>

#include "yieldctl/dataset.hpp"
#include "yieldctl/ice.hpp"

namespace yieldctl {

/// Rows where every range's feature value lies inside [lower, upper] (closed
/// bounds: products at the bound were produced in-range).
ProcessDataset filter_in_range(const ProcessDataset& ds, const std::vector<ControlRange>& ranges);

struct DefectRate {
    std::size_t normal = 0;
    std::size_t defect = 0;
    std::optional<double> percent;  // raw 100*defect/total; empty set -> N/A

    std::size_t total() const { return normal + defect; }
};

DefectRate defect_rate(const ProcessDataset& ds);

/// Two-decimal display (round-half-up) or "N/A" for an empty set.
std::string format_rate(const DefectRate& rate);

struct ValidationRow {
    double alpha = 0.0;
    DefectRate rate;
    bool improved = false;  // filtered rate strictly below baseline
};

struct ValidationReport {
    std::vector<ValidationRow> per_alpha;
    DefectRate baseline;
};

/// Applies each alpha's ranges to the untouched test split and compares the
/// resulting defect rates against the unfiltered baseline.
ValidationReport validation_report(
    const ProcessDataset& test,
    const std::vector<std::pair<double, std::vector<ControlRange>>>& ranges_per_alpha);

/// Aligned plain-text table of the report.
std::string render_validation_table(const ValidationReport& report);

}  // namespace yieldctl
