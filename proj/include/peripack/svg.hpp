#pragma once

#include <string>

#include "peripack/doc.hpp"

namespace peripack {

// Deterministic SVG: container outline first, then one filled shape per body
// in index order, 50% opacity. View box is the container bounding box plus a
// 2% margin; the y axis points up.
std::string render_svg(const PackingDoc& doc, int width_px = 800);

}  // namespace peripack
