#pragma once

#include "mldtw/cost_matrix.hpp"
#include "mldtw/time_series.hpp"

namespace mldtw {

/// Euclidean distance between two points; |a - b| in one dimension.
/// Throws DimensionMismatch when the point widths differ.
double point_distance(Point a, Point b);

/// Exact accumulated-cost matrix: every cell (i, j) with i, j >= 1 holds
/// Dist(i, j) + min(D(i-1, j), D(i, j-1), D(i-1, j-1)).
CostMatrix full_cost_matrix(const TimeSeries& a, const TimeSeries& b);

/// Recovers the warp path by walking back from (n, m). Among the three
/// predecessors the first minimum in the order diagonal, column-decrement,
/// row-decrement wins. Throws DisconnectedRegion if D(n, m) is infinite.
WarpPath backtrack(const CostMatrix& matrix);

/// Exact DTW. `cells_computed` is n * m.
Alignment full_dtw(const TimeSeries& a, const TimeSeries& b);

/// True when `path` starts at (1,1), ends at (n,m) and every step is one of
/// (0,+1), (+1,0), (+1,+1).
bool is_valid_warp_path(const WarpPath& path, std::size_t n, std::size_t m) noexcept;

/// Sum of point distances along `path`.
double path_cost(const TimeSeries& a, const TimeSeries& b, const WarpPath& path);

}  // namespace mldtw
