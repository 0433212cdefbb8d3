#pragma once

#include <span>
#include <vector>

#include "mldtw/nn/matrix.hpp"

namespace mldtw::nn {

/// Per-feature standardization (x - mean) / std. Features with zero variance
/// get std = 1 so they transform to zero.
struct Scaler {
    std::vector<double> means;
    std::vector<double> stds;

    std::size_t dim() const noexcept { return means.size(); }

    /// Fits on every row of `x` (population std). Needs at least 2 rows.
    static Scaler fit(const Matrix& x);

    Matrix transform(const Matrix& x) const;
    std::vector<double> transform(std::span<const double> x) const;
};

}  // namespace mldtw::nn
