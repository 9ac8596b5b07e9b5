#pragma once

// SVG 1.1 drawings of clusters.

#include <string>

#include "isoclust/cluster.hpp"

namespace isoclust {

struct SvgStyle {
    double pixels_per_unit = 160.0;
    double stroke_width = 1.5;  ///< pixels
    bool shade_proper = true;
    bool label_nodes = false;
};

/// One <path> per interface plus one for the window outline; proper chambers
/// shaded as <polygon> elements underneath. Output depends only on the input.
std::string to_svg(const DiscreteCluster& c, const SvgStyle& style = {});

}  // namespace isoclust
