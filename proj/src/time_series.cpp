#include "mldtw/time_series.hpp"

#include <cmath>

#include "mldtw/error.hpp"

namespace mldtw {

TimeSeries::TimeSeries(std::vector<double> values, std::size_t dim, std::string id)
    : values_(std::move(values)), dim_(dim), id_(std::move(id)) {
    if (dim_ == 0) throw InvalidArgument("time series dimension must be positive");
    if (values_.size() % dim_ != 0)
        throw InvalidArgument("time series value count " + std::to_string(values_.size()) +
                              " is not a multiple of dim " + std::to_string(dim_));
    if (size() < min_length)
        throw InvalidArgument("time series needs at least 2 points, got " + std::to_string(size()));
    for (double v : values_)
        if (!std::isfinite(v)) throw InvalidArgument("time series contains a non-finite value");
}

std::span<const double> TimeSeries::prefix(std::size_t count) const {
    if (count > size())
        throw InvalidArgument("prefix of " + std::to_string(count) + " points requested from a series of " +
                              std::to_string(size()));
    return {values_.data(), count * dim_};
}

std::vector<double> TimeSeries::planes() const {
    const std::size_t n = size();
    if (dim_ == 1) return values_;
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < dim_; ++k) out[k * n + i] = values_[i * dim_ + k];
    return out;
}

}  // namespace mldtw
