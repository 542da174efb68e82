#pragma once

#include <string>
#include <vector>

#include "convexity/geometry.hpp"

namespace convexity {

// Deterministic SVG 1.1 document for a 2D shape. With per-element values the
// edges are colored by a linear blue-to-red map with a min/max legend;
// identical input yields byte-identical output.
std::string render_svg(const PolygonBoundary& shape,
                       const std::vector<double>* per_element_values = nullptr);

} // namespace convexity
