#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "mldtw/cost_matrix.hpp"

namespace mldtw {

struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;  // row-major

    std::uint8_t at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
};

/// One pixel per matrix cell, border included: (n+1) rows by (m+1) columns.
/// Finite cells are min-max normalized onto 0..254 (dark = small; a constant
/// matrix maps to 128), infinite cells are white (255), and path cells, when
/// given, are drawn at 0.
GrayImage render_heatmap(const CostMatrix& matrix, const WarpPath* path = nullptr);

/// Binary PGM ("P5 width height 255").
void write_pgm(const std::filesystem::path& file, const GrayImage& image);

void heatmap_export(const CostMatrix& matrix, const std::filesystem::path& file, const WarpPath* path = nullptr);

}  // namespace mldtw
