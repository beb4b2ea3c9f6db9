#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "pairplan/errors.hpp"

namespace pairplan {

// Dense row-major matrix of doubles.
struct Grid {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Grid() = default;
    Grid(int r, int c, double fill = 0.0) : rows(r), cols(c) {
        if (r < 0 || c < 0) throw ValidationError("Grid dimensions must be non-negative");
        data.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill);
    }

    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    std::size_t size() const { return data.size(); }

    bool same_shape(const Grid& other) const {
        return rows == other.rows && cols == other.cols;
    }
};

// Planar multi-channel image: channel c occupies one contiguous H*W block.
struct Image {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<double> data;

    Image() = default;
    Image(int h, int w, int c, double fill = 0.0) : height(h), width(w), channels(c) {
        if (h < 0 || w < 0 || c < 0) throw ValidationError("Image dimensions must be non-negative");
        data.assign(static_cast<std::size_t>(h) * w * c, fill);
    }

    double& at(int c, int y, int x) {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    double at(int c, int y, int x) const {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }

    Grid channel(int c) const {
        Grid g(height, width);
        const std::size_t plane = static_cast<std::size_t>(height) * width;
        std::copy(data.begin() + c * plane, data.begin() + (c + 1) * plane, g.data.begin());
        return g;
    }

    void set_channel(int c, const Grid& g) {
        if (g.rows != height || g.cols != width)
            throw ValidationError("set_channel: shape mismatch");
        const std::size_t plane = static_cast<std::size_t>(height) * width;
        std::copy(g.data.begin(), g.data.end(), data.begin() + c * plane);
    }

    bool same_shape(const Image& other) const {
        return height == other.height && width == other.width && channels == other.channels;
    }
};

}  // namespace pairplan
