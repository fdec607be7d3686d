#include "ldh/raster.hpp"

#include <cstdio>
#include <fstream>
#include <vector>

namespace ldh {

namespace {

std::ofstream open_binary(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

void write_pgm(const std::string& path, const Gray8& image) {
    if (image.size() == 0) throw InvalidInput("empty image");
    std::ofstream out = open_binary(path);
    out << "P5\n" << image.rows() << " " << image.cols() << "\n255\n";
    // Raster row y holds x = 0..nx-1.
    std::vector<unsigned char> row(static_cast<std::size_t>(image.rows()));
    for (Index y = 0; y < image.cols(); ++y) {
        for (Index x = 0; x < image.rows(); ++x) row[static_cast<std::size_t>(x)] = image(x, y);
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw FormatError("short write to '" + path + "'");
}

void write_ppm(const std::string& path, const CompositeImage& image) {
    if (image.r.size() == 0 || image.g.rows() != image.r.rows() ||
        image.b.rows() != image.r.rows() || image.g.cols() != image.r.cols() ||
        image.b.cols() != image.r.cols())
        throw InvalidInput("composite channels must be non-empty and equal-sized");
    std::ofstream out = open_binary(path);
    out << "P6\n" << image.nx() << " " << image.ny() << "\n255\n";
    auto to_byte = [](float v) {
        const float clipped = v < 0.0f ? 0.0f : (v > 1.0f ? 1.0f : v);
        return static_cast<unsigned char>(clipped * 255.0f + 0.5f);
    };
    std::vector<unsigned char> row(static_cast<std::size_t>(image.nx()) * 3);
    for (Index y = 0; y < image.ny(); ++y) {
        for (Index x = 0; x < image.nx(); ++x) {
            row[static_cast<std::size_t>(3 * x) + 0] = to_byte(image.r(x, y));
            row[static_cast<std::size_t>(3 * x) + 1] = to_byte(image.g(x, y));
            row[static_cast<std::size_t>(3 * x) + 2] = to_byte(image.b(x, y));
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw FormatError("short write to '" + path + "'");
}

}  // namespace ldh
