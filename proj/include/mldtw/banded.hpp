#pragma once

#include <cstddef>

#include "mldtw/cost_matrix.hpp"
#include "mldtw/search_region.hpp"
#include "mldtw/time_series.hpp"

namespace mldtw {

/// Sakoe-Chiba band around the stretched diagonal j ~ i * m / n. Row i covers
/// the diagonal's run of columns floor((i-1) m / n) + 1 .. ceil(i m / n),
/// widened by `radius` on both sides; for n == m that is [i - r, i + r].
/// Consecutive rows always touch, so bands nest as the radius grows.
/// Throws InvalidArgument for n, m < 2 or radius < 1.
SearchRegion sakoe_chiba_region(std::size_t n, std::size_t m, std::size_t radius);

/// Fills only the cells of `region`; everything else stays infinite.
/// Throws DimensionMismatch if the region or point dimensions disagree
/// with the series.
CostMatrix constrained_cost_matrix(const TimeSeries& a, const TimeSeries& b, const SearchRegion& region);

/// DTW restricted to `region`. The distance is never below the exact one.
Alignment constrained_dtw(const TimeSeries& a, const TimeSeries& b, const SearchRegion& region);

/// Fixed-band approximation ("FastDTW" baseline).
Alignment banded_dtw(const TimeSeries& a, const TimeSeries& b, std::size_t radius);

}  // namespace mldtw
