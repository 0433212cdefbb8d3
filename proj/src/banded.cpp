#include "mldtw/banded.hpp"

#include <vector>

#include "fill.hpp"
#include "mldtw/error.hpp"

namespace mldtw {

SearchRegion sakoe_chiba_region(std::size_t n, std::size_t m, std::size_t radius) {
    if (n < 2 || m < 2) throw InvalidArgument("band needs n, m >= 2");
    if (radius < 1) throw InvalidArgument("band radius must be >= 1");
    const auto r = static_cast<std::ptrdiff_t>(radius);
    std::vector<RawInterval> raw(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const auto first = static_cast<std::ptrdiff_t>((i - 1) * m / n + 1);
        const auto last = static_cast<std::ptrdiff_t>((i * m + n - 1) / n);
        raw[i - 1] = {first - r, last + r};
    }
    return SearchRegion::from_raw(n, m, raw);
}

CostMatrix constrained_cost_matrix(const TimeSeries& a, const TimeSeries& b, const SearchRegion& region) {
    return detail::fill_region(a, b, region);
}

Alignment constrained_dtw(const TimeSeries& a, const TimeSeries& b, const SearchRegion& region) {
    return detail::align_in_region(a, b, region);
}

Alignment banded_dtw(const TimeSeries& a, const TimeSeries& b, std::size_t radius) {
    detail::require_same_dim(a, b);
    return constrained_dtw(a, b, sakoe_chiba_region(a.size(), b.size(), radius));
}

}  // namespace mldtw
