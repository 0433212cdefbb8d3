#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mldtw {

/// One sample of a series; a view of `dim` consecutive values.
using Point = std::span<const double>;

/// Ordered sequence of at least two points, each holding `dim` finite values.
/// Values are stored point-major (x0 y0 x1 y1 ...). Immutable after construction.
class TimeSeries {
public:
    static constexpr std::size_t min_length = 2;

    /// Throws InvalidArgument if `values.size()` is not a multiple of `dim`,
    /// the series is shorter than `min_length`, or any value is non-finite.
    TimeSeries(std::vector<double> values, std::size_t dim = 1, std::string id = {});

    std::size_t size() const noexcept { return values_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::string& id() const noexcept { return id_; }

    Point point(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
    std::span<const double> values() const noexcept { return values_; }

    /// Values of the first `count` points, flattened in point order.
    std::span<const double> prefix(std::size_t count) const;

    /// Dimension-major copy: plane k holds value k of every point, contiguous.
    std::vector<double> planes() const;

private:
    std::vector<double> values_;
    std::size_t dim_;
    std::string id_;
};

}  // namespace mldtw
