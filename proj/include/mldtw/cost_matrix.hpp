#pragma once

#include <chrono>
#include <cstddef>
#include <limits>
#include <vector>

namespace mldtw {

/// A matrix coordinate. 1-based when it refers to a cost-matrix cell or a
/// warp path pair; row indexes series A, column indexes series B.
struct Cell {
    std::size_t row = 0;
    std::size_t col = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Accumulated-distance grid of shape (n+1) x (m+1). Row 0 and column 0 form
/// an infinite border except cell (0,0) = 0. Cells never reached by a fill
/// keep the infinite sentinel.
class CostMatrix {
public:
    static constexpr double inf = std::numeric_limits<double>::infinity();

    CostMatrix(std::size_t n, std::size_t m);

    std::size_t n() const noexcept { return rows_ - 1; }
    std::size_t m() const noexcept { return cols_ - 1; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return cells_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return cells_[i * cols_ + j]; }

    double* row(std::size_t i) noexcept { return cells_.data() + i * cols_; }
    const double* row(std::size_t i) const noexcept { return cells_.data() + i * cols_; }

    /// D(n, m); infinite when the fill never connected the corners.
    double distance() const noexcept { return (*this)(n(), m()); }

    std::size_t computed_count() const noexcept { return computed_; }
    void set_computed_count(std::size_t count) noexcept { computed_ = count; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> cells_;
    std::size_t computed_ = 0;
};

/// Monotone sequence of 1-based pairs from (1,1) to (n,m).
struct WarpPath {
    std::vector<Cell> pairs;

    std::size_t size() const noexcept { return pairs.size(); }
    friend bool operator==(const WarpPath&, const WarpPath&) = default;
};

/// Result of one DTW variant on one pair of series.
struct Alignment {
    double distance = 0.0;
    WarpPath path;
    std::size_t cells_computed = 0;
    std::chrono::nanoseconds fill_time{0};  // region fill + backtrack, matrix allocation excluded
};

}  // namespace mldtw
