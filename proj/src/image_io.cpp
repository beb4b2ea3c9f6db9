#include "pairplan/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

#include <nlohmann/json.hpp>

#include "pairplan/errors.hpp"

namespace pairplan {

namespace {

void byte_swap_doubles(std::vector<double>& values) {
    for (double& v : values) {
        auto bits = std::bit_cast<std::array<unsigned char, 8>>(v);
        std::reverse(bits.begin(), bits.end());
        v = std::bit_cast<double>(bits);
    }
}

std::size_t shape_count(const std::vector<int>& shape) {
    if (shape.empty()) throw ValidationError("dump shape must be non-empty");
    std::size_t count = 1;
    for (int dim : shape) {
        if (dim < 1) throw ValidationError("dump shape entries must be positive");
        count *= static_cast<std::size_t>(dim);
    }
    return count;
}

}  // namespace

void write_f64_dump(const std::string& path, const std::vector<int>& shape,
                    const std::vector<double>& data) {
    if (shape_count(shape) != data.size())
        throw ValidationError("dump shape does not match data size");

    nlohmann::ordered_json header;
    header["dtype"] = "f64le";
    header["shape"] = shape;
    const std::string line = header.dump();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    out.put('\n');
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(data.data()),
                  static_cast<std::streamsize>(data.size() * sizeof(double)));
    } else {
        std::vector<double> swapped = data;
        byte_swap_doubles(swapped);
        out.write(reinterpret_cast<const char*>(swapped.data()),
                  static_cast<std::streamsize>(swapped.size() * sizeof(double)));
    }
    if (!out) throw IoError("failed writing dump '" + path + "'");
}

F64Dump read_f64_dump(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open dump '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw IoError("dump '" + path + "' is missing its header");

    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("dump '" + path + "' has a malformed header: " + e.what());
    }
    if (!header.is_object() || header.value("dtype", "") != "f64le" ||
        !header.contains("shape") || !header["shape"].is_array())
        throw IoError("dump '" + path + "' has an unsupported header");

    F64Dump dump;
    for (const auto& dim : header["shape"]) {
        if (!dim.is_number_integer())
            throw IoError("dump '" + path + "' has a non-integer shape entry");
        dump.shape.push_back(dim.get<int>());
    }
    const std::size_t count = shape_count(dump.shape);
    dump.data.resize(count);
    in.read(reinterpret_cast<char*>(dump.data.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != count * sizeof(double))
        throw IoError("dump '" + path + "' is truncated");
    if constexpr (std::endian::native != std::endian::little) byte_swap_doubles(dump.data);
    return dump;
}

void write_grid_dump(const std::string& path, const Grid& grid) {
    write_f64_dump(path, {grid.rows, grid.cols}, grid.data);
}

Grid read_grid_dump(const std::string& path) {
    F64Dump dump = read_f64_dump(path);
    if (dump.shape.size() != 2)
        throw IoError("dump '" + path + "' is not a 2-d grid");
    Grid grid(dump.shape[0], dump.shape[1]);
    grid.data = std::move(dump.data);
    return grid;
}

void write_image_dump(const std::string& path, const Image& image) {
    write_f64_dump(path, {image.channels, image.height, image.width}, image.data);
}

Image read_image_dump(const std::string& path) {
    F64Dump dump = read_f64_dump(path);
    if (dump.shape.size() != 3)
        throw IoError("dump '" + path + "' is not a 3-d image");
    Image image(dump.shape[1], dump.shape[2], dump.shape[0]);
    image.data = std::move(dump.data);
    return image;
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

void write_png(const std::string& path, const Image& image) {
    if (image.channels != 3) throw ValidationError("png writer expects a 3-channel image");
    if (image.height < 1 || image.width < 1)
        throw ValidationError("png writer expects a non-empty image");

    std::vector<unsigned char> bytes(static_cast<std::size_t>(image.height) * image.width * 3);
    std::vector<png_bytep> rows(static_cast<std::size_t>(image.height));
    for (int y = 0; y < image.height; ++y) {
        unsigned char* row = bytes.data() + static_cast<std::size_t>(y) * image.width * 3;
        rows[static_cast<std::size_t>(y)] = row;
        for (int x = 0; x < image.width; ++x) {
            for (int c = 0; c < 3; ++c) {
                double v = image.at(c, y, x);
                v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
                row[x * 3 + c] = static_cast<unsigned char>(std::lround(v * 255.0));
            }
        }
    }

    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw IoError("cannot open '" + path + "' for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png writer allocation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("png writer allocation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed writing png '" + path + "'");
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
                 static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

Image read_png(const std::string& path) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) throw IoError("cannot open png '" + path + "'");

    unsigned char sig[8];
    if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw IoError("'" + path + "' is not a png file");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png reader allocation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("png reader allocation failed");
    }

    std::vector<unsigned char> bytes;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("failed reading png '" + path + "'");
    }
    png_init_io(png, file.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    png_set_expand(png);
    png_set_strip_16(png);
    png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));
    if (png_get_channels(png, info) != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("png '" + path + "' did not decode to rgb8");
    }

    bytes.resize(static_cast<std::size_t>(height) * width * 3);
    rows.resize(static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y)
        rows[static_cast<std::size_t>(y)] = bytes.data() + static_cast<std::size_t>(y) * width * 3;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    Image image(height, width, 3);
    for (int c = 0; c < 3; ++c)
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x)
                image.at(c, y, x) =
                    bytes[(static_cast<std::size_t>(y) * width + x) * 3 + c] / 255.0;
    return image;
}

}  // namespace pairplan
