#include "yieldctl/plot.hpp"

#include <algorithm>
#include <fstream>

#include "yieldctl/csv.hpp"
#include "yieldctl/error.hpp"

namespace yieldctl {

namespace {

constexpr double kWidth = 840.0;
constexpr double kHeight = 520.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 50.0;

struct Scale {
    double x_min, x_max;

    double x(double v) const {
        const double span = x_max > x_min ? x_max - x_min : 1.0;
        return kMarginLeft + (v - x_min) / span * (kWidth - kMarginLeft - kMarginRight);
    }
    double y(double p) const {  // probability axis fixed to [0, 1]
        return kMarginTop + (1.0 - p) * (kHeight - kMarginTop - kMarginBottom);
    }
};

void polyline(std::ofstream& out, const Scale& s, const std::vector<double>& grid,
              const std::vector<double>& values, const std::string& style) {
    out << "  <polyline fill=\"none\" " << style << " points=\"";
    for (std::size_t i = 0; i < grid.size(); ++i)
        out << s.x(grid[i]) << ',' << s.y(values[i]) << ' ';
    out << "\"/>\n";
}

}  // namespace

void write_ice_svg(const IceSurface& surface, const std::string& feature_name,
                   const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write plot file: " + path.string());

    Scale s{surface.grid.front(), surface.grid.back()};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (const auto& curve : surface.curves)
        polyline(out, s, surface.grid, curve, "stroke=\"#b9c0c8\" stroke-width=\"0.7\"");

    const double pdp_max = *std::max_element(surface.pdp.begin(), surface.pdp.end());
    const double pdp_min = *std::min_element(surface.pdp.begin(), surface.pdp.end());
    for (double level : {pdp_max, pdp_min})
        out << "  <line x1=\"" << s.x(s.x_min) << "\" x2=\"" << s.x(s.x_max) << "\" y1=\""
            << s.y(level) << "\" y2=\"" << s.y(level)
            << "\" stroke=\"#d62728\" stroke-width=\"1\"/>\n";

    polyline(out, s, surface.grid, surface.pdp,
             "stroke=\"#ff7f0e\" stroke-width=\"2.2\" stroke-dasharray=\"7,4\"");

    // axes
    out << "  <line x1=\"" << kMarginLeft << "\" x2=\"" << kWidth - kMarginRight << "\" y1=\""
        << s.y(0.0) << "\" y2=\"" << s.y(0.0) << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << kMarginLeft << "\" x2=\"" << kMarginLeft << "\" y1=\"" << s.y(0.0)
        << "\" y2=\"" << s.y(1.0) << "\" stroke=\"black\"/>\n";
    for (double tick : {0.0, 0.25, 0.5, 0.75, 1.0})
        out << "  <text x=\"" << kMarginLeft - 8 << "\" y=\"" << s.y(tick) + 4
            << "\" font-size=\"12\" text-anchor=\"end\">" << format_double(tick) << "</text>\n";
    for (double tick : {s.x_min, 0.5 * (s.x_min + s.x_max), s.x_max})
        out << "  <text x=\"" << s.x(tick) << "\" y=\"" << kHeight - kMarginBottom + 20
            << "\" font-size=\"12\" text-anchor=\"middle\">" << format_double(tick)
            << "</text>\n";
    out << "  <text x=\"" << 0.5 * kWidth << "\" y=\"" << kHeight - 12
        << "\" font-size=\"14\" text-anchor=\"middle\">" << feature_name << "</text>\n";
    out << "  <text x=\"" << 0.5 * kWidth << "\" y=\"18\" font-size=\"14\" "
        << "text-anchor=\"middle\">ICE curves with PDP overlay</text>\n";
    out << "</svg>\n";
    if (!out) throw Error("write failed: " + path.string());
}

}  // namespace yieldctl
