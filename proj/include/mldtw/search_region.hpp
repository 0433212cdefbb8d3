#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mldtw {

/// Inclusive, 1-based column interval.
struct ColumnInterval {
    std::size_t lo = 1;
    std::size_t hi = 1;
    std::size_t width() const noexcept { return hi - lo + 1; }
    friend bool operator==(const ColumnInterval&, const ColumnInterval&) = default;
};

/// Unclamped interval as produced by band or region geometry; may lie
/// partly outside the matrix or be inverted.
struct RawInterval {
    std::ptrdiff_t lo = 1;
    std::ptrdiff_t hi = 1;
};

/// Cells of an n x m cost matrix that a constrained fill computes: one
/// column interval per row.
///
/// A region built through `from_raw` is repaired so that every cell it
/// contains is reachable from (1,1) by DTW steps and (n,m) is included:
///   - row 1 starts at column 1 and row n ends at column m;
///   - when a row starts right of the previous row's reach (lo_i > hi_{i-1}+1),
///     it is extended left to the previous row's lo;
///   - a row never starts left of the previous row's lo (those cells cannot
///     be reached by a monotone path), and never ends left of its own start.
/// With these rules the fill leaves no infinite cell inside the region.
class SearchRegion {
public:
    /// Takes the intervals as given: bounds are checked (1 <= lo <= hi <= m)
    /// but no connectivity repair is applied. Fills over such a region may
    /// leave (n, m) unreached.
    static SearchRegion unrepaired(std::size_t m, std::vector<ColumnInterval> intervals);

    /// Full matrix: every row spans [1, m].
    static SearchRegion full(std::size_t n, std::size_t m);

    /// Clamps each interval to [1, m] and applies the connectivity repair.
    /// Throws InvalidArgument unless `raw` has n >= 1 entries and m >= 1.
    static SearchRegion from_raw(std::size_t n, std::size_t m, const std::vector<RawInterval>& raw);

    std::size_t n() const noexcept { return intervals_.size(); }
    std::size_t m() const noexcept { return m_; }

    /// Interval of 1-based row i.
    const ColumnInterval& row(std::size_t i) const noexcept { return intervals_[i - 1]; }
    const std::vector<ColumnInterval>& intervals() const noexcept { return intervals_; }

    bool contains(std::size_t i, std::size_t j) const noexcept;

    /// Total number of cells.
    std::size_t area() const noexcept;

    /// Checks every SearchRegion invariant (bounds, corners, connectivity).
    bool is_connected() const noexcept;

private:
    SearchRegion(std::size_t m, std::vector<ColumnInterval> intervals) : m_(m), intervals_(std::move(intervals)) {}

    std::size_t m_;
    std::vector<ColumnInterval> intervals_;
};

}  // namespace mldtw
