#pragma once

#include "mldtw/cost_matrix.hpp"
#include "mldtw/search_region.hpp"
#include "mldtw/time_series.hpp"

namespace mldtw::detail {

void require_same_dim(const TimeSeries& a, const TimeSeries& b);

/// Fills the cells of `region` row by row with the active SIMD kernels.
CostMatrix fill_region(const TimeSeries& a, const TimeSeries& b, const SearchRegion& region);

/// fill_region + backtrack, timed.
Alignment align_in_region(const TimeSeries& a, const TimeSeries& b, const SearchRegion& region);

}  // namespace mldtw::detail
