#pragma once

#include <filesystem>
#include <string>

#include "yieldctl/ice.hpp"

namespace yieldctl {

/// SVG rendering of one ICE surface: gray per-instance curves, the PDP as a
/// dashed orange overlay, and red guide lines at the PDP extremes.
void write_ice_svg(const IceSurface& surface, const std::string& feature_name,
                   const std::filesystem::path& path);

}  // namespace yieldctl
