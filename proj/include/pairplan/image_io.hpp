#pragma once

#include <string>
#include <vector>

#include "pairplan/grid.hpp"

namespace pairplan {

// Flat binary dump: one JSON header line {"dtype":"f64le","shape":[...]},
// then '\n', then the values as little-endian 64-bit reals in C order.
struct F64Dump {
    std::vector<int> shape;
    std::vector<double> data;
};

void write_f64_dump(const std::string& path, const std::vector<int>& shape,
                    const std::vector<double>& data);
F64Dump read_f64_dump(const std::string& path);

// Shape [height, width].
void write_grid_dump(const std::string& path, const Grid& grid);
Grid read_grid_dump(const std::string& path);

// Shape [channels, height, width], matching the planar in-memory layout.
void write_image_dump(const std::string& path, const Image& image);
Image read_image_dump(const std::string& path);

// 8-bit RGB PNG. Values clamp to [0, 1] on write and scale to [0, 1] on
// read; grayscale/palette/16-bit inputs widen to RGB8, alpha is dropped.
void write_png(const std::string& path, const Image& image);
Image read_png(const std::string& path);

}  // namespace pairplan
