#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mldtw::nn {

/// Dense row-major matrix of doubles.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) noexcept { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data[i * cols + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data.data() + i * cols, cols}; }
    std::span<const double> row(std::size_t i) const noexcept { return {data.data() + i * cols, cols}; }

    /// Copies the given rows, in order.
    Matrix select_rows(std::span<const std::size_t> indices) const;
};

/// Builds a matrix from equally sized rows. Throws InvalidArgument on ragged input.
Matrix from_rows(const std::vector<std::vector<double>>& rows);

}  // namespace mldtw::nn
