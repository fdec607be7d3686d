#pragma once

#include <string>

#include "ldh/display.hpp"
#include "ldh/types.hpp"

namespace ldh {

// Binary portable pixmaps (P5 / P6, maxval 255). Raster rows are y ascending,
// x within a row, matching the stack's row-major (y, x) flattening.

void write_pgm(const std::string& path, const Gray8& image);
void write_ppm(const std::string& path, const CompositeImage& image);

}  // namespace ldh
