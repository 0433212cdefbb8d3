#pragma once

// Turns predicted waypoints and their confidences into a search region:
// a piecewise-linear center path, a per-row width profile that widens where
// the predictions are uncertain, and the resulting per-row column intervals.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "mldtw/cost_matrix.hpp"
#include "mldtw/search_region.hpp"

namespace mldtw {

inline constexpr std::size_t kWaypointCount = 5;
inline constexpr std::size_t kDefaultQuantum = 5;
inline constexpr int kEndpointWidth = 14;

/// 0-based (row, col) anchor on a warp path; row indexes series A.
struct Waypoint {
    int row = 0;
    int col = 0;
    friend auto operator<=>(const Waypoint&, const Waypoint&) = default;
};

using WaypointSet = std::array<Waypoint, kWaypointCount>;

/// `quantum * round(x / quantum)` with ties to even.
int quantize(double x, int quantum);

/// Interior waypoint columns round(k * m / 6), k = 1..5 (0-based columns).
std::array<int, kWaypointCount> interior_columns(std::size_t m);

/// Monotone staircase of 0-based cells from (0,0) to (n-1, m-1).
struct CenterPath {
    std::vector<Cell> cells;
};

/// One positive width per matrix row.
struct WidthProfile {
    std::vector<int> widths;
};

/// Links (0,0), the waypoints and (n-1, m-1) into a staircase. Each target is
/// pushed at least one row and column past the current cell and clamped into
/// the matrix, so out-of-range predictions are absorbed. Segments are
/// rasterized column by column with the row advanced toward
/// round(step * slope); the last column of a segment climbs to one row below
/// its target, which is where the next segment starts. The path is then
/// closed to (n-1, m-1) and de-duplicated.
/// Throws InvalidArgument for n, m < 2.
CenterPath center_path(std::span<const Waypoint> waypoints, std::size_t n, std::size_t m);

/// Anchor widths are [endpoint, int((2 - c) * m / 10) for each confidence,
/// endpoint]; consecutive anchors are joined by linear ramps of n / 6 rows.
/// The result is cut or padded (with the endpoint width) to exactly n rows,
/// the last row is pinned to the endpoint width and every width is >= 1.
/// Throws InvalidArgument if a confidence lies outside (0, 1].
WidthProfile width_profile(std::span<const double> confidences, std::size_t n, std::size_t m,
                           int endpoint_width = kEndpointWidth);

/// Per-row interval around the mean path column of that row. A row with more
/// path cells than its width widens to cover them; intervals that would start
/// left of column 1 are anchored there; row 1 is pinned to column 1 and row n
/// to column m. The intervals are then repaired (SearchRegion::from_raw).
SearchRegion region_from_path(const CenterPath& path, const WidthProfile& widths, std::size_t n, std::size_t m);

/// Unclamped intervals before repair; exposed for inspection and tests.
std::vector<RawInterval> raw_region_intervals(const CenterPath& path, const WidthProfile& widths, std::size_t n,
                                              std::size_t m);

}  // namespace mldtw
