#include "mldtw/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "mldtw/error.hpp"

namespace mldtw {

GrayImage render_heatmap(const CostMatrix& matrix, const WarpPath* path) {
    GrayImage img{matrix.cols(), matrix.rows(), std::vector<std::uint8_t>(matrix.rows() * matrix.cols(), 255)};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < matrix.rows(); ++i)
        for (std::size_t j = 0; j < matrix.cols(); ++j)
            if (const double v = matrix(i, j); std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
    for (std::size_t i = 0; i < matrix.rows(); ++i)
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            const double v = matrix(i, j);
            if (!std::isfinite(v)) continue;
            img.pixels[i * img.width + j] =
                hi > lo ? static_cast<std::uint8_t>(std::lround(254.0 * (v - lo) / (hi - lo))) : std::uint8_t{128};
        }
    if (path)
        for (const Cell& c : path->pairs)
            if (c.row < img.height && c.col < img.width) img.pixels[c.row * img.width + c.col] = 0;
    return img;
}

void write_pgm(const std::filesystem::path& file, const GrayImage& image) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + file.string() + " for writing");
    out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
    if (!out) throw IoError("failed writing " + file.string());
}

void heatmap_export(const CostMatrix& matrix, const std::filesystem::path& file, const WarpPath* path) {
    write_pgm(file, render_heatmap(matrix, path));
}

}  // namespace mldtw
