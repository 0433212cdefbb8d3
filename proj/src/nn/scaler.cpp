#include "mldtw/nn/scaler.hpp"

#include <cmath>
#include <string>

#include "mldtw/error.hpp"

namespace mldtw::nn {

Scaler Scaler::fit(const Matrix& x) {
    if (x.rows < 2 || x.cols == 0) throw InvalidArgument("scaler needs at least 2 rows and 1 feature");
    Scaler s;
    s.means.assign(x.cols, 0.0);
    s.stds.assign(x.cols, 0.0);
    for (std::size_t r = 0; r < x.rows; ++r)
        for (std::size_t c = 0; c < x.cols; ++c) s.means[c] += x(r, c);
    for (double& mu : s.means) mu /= static_cast<double>(x.rows);
    for (std::size_t r = 0; r < x.rows; ++r)
        for (std::size_t c = 0; c < x.cols; ++c) {
            const double d = x(r, c) - s.means[c];
            s.stds[c] += d * d;
        }
    for (double& sd : s.stds) {
        sd = std::sqrt(sd / static_cast<double>(x.rows));
        if (!(sd > 0.0) || !std::isfinite(sd)) sd = 1.0;
    }
    return s;
}

Matrix Scaler::transform(const Matrix& x) const {
    if (x.cols != dim())
        throw DimensionMismatch("scaler expects " + std::to_string(dim()) + " features, got " +
                                std::to_string(x.cols));
    Matrix out(x.rows, x.cols);
    for (std::size_t r = 0; r < x.rows; ++r)
        for (std::size_t c = 0; c < x.cols; ++c) out(r, c) = (x(r, c) - means[c]) / stds[c];
    return out;
}

std::vector<double> Scaler::transform(std::span<const double> x) const {
    if (x.size() != dim())
        throw DimensionMismatch("scaler expects " + std::to_string(dim()) + " features, got " +
                                std::to_string(x.size()));
    std::vector<double> out(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) out[c] = (x[c] - means[c]) / stds[c];
    return out;
}

}  // namespace mldtw::nn
