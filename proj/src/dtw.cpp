#include "mldtw/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fill.hpp"
#include "mldtw/error.hpp"
#include "mldtw/simd/kernels.hpp"

namespace mldtw {

namespace detail {

void require_same_dim(const TimeSeries& a, const TimeSeries& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("series dimensions differ: " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
}

namespace {

void check_shapes(const TimeSeries& a, const TimeSeries& b, const SearchRegion& region) {
    require_same_dim(a, b);
    if (region.n() != a.size() || region.m() != b.size())
        throw DimensionMismatch("search region is " + std::to_string(region.n()) + "x" + std::to_string(region.m()) +
                                " but the series are " + std::to_string(a.size()) + "x" + std::to_string(b.size()));
}

// `matrix` must be freshly constructed for (n, m); `planes` is b.planes().
void fill_into(CostMatrix& matrix, const TimeSeries& a, const std::vector<double>& planes, const SearchRegion& region,
               std::vector<double>& costs) {
    const simd::Kernels& k = simd::active();
    const std::size_t n = matrix.n();
    const std::size_t m = matrix.m();
    for (std::size_t i = 1; i <= n; ++i) {
        const ColumnInterval& iv = region.row(i);
        k.row_costs(a.point(i - 1).data(), planes.data(), m, a.dim(), iv.lo - 1, iv.width(), costs.data());
        k.dtw_row(matrix.row(i - 1), matrix.row(i), costs.data(), iv.lo, iv.hi);
    }
    matrix.set_computed_count(region.area());
}

}  // namespace

CostMatrix fill_region(const TimeSeries& a, const TimeSeries& b, const SearchRegion& region) {
    check_shapes(a, b, region);
    const std::vector<double> planes = b.planes();
    std::vector<double> costs(b.size());
    CostMatrix matrix(a.size(), b.size());
    fill_into(matrix, a, planes, region, costs);
    return matrix;
}

Alignment align_in_region(const TimeSeries& a, const TimeSeries& b, const SearchRegion& region) {
    check_shapes(a, b, region);
    // Storage setup is O(nm) for every variant; only the fill and backtrack are timed.
    const std::vector<double> planes = b.planes();
    std::vector<double> costs(b.size());
    CostMatrix matrix(a.size(), b.size());
    const auto start = std::chrono::steady_clock::now();
    fill_into(matrix, a, planes, region, costs);
    WarpPath path = backtrack(matrix);
    const auto stop = std::chrono::steady_clock::now();
    Alignment out;
    out.distance = matrix.distance();
    out.path = std::move(path);
    out.cells_computed = matrix.computed_count();
    out.fill_time = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start);
    return out;
}

}  // namespace detail

CostMatrix::CostMatrix(std::size_t n, std::size_t m) : rows_(n + 1), cols_(m + 1), cells_(rows_ * cols_, inf) {
    cells_[0] = 0.0;
}

double point_distance(Point a, Point b) {
    if (a.size() != b.size())
        throw DimensionMismatch("point dimensions differ: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
    if (a.size() == 1) return std::fabs(a[0] - b[0]);
    double acc = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        acc = acc + diff * diff;
    }
    return std::sqrt(acc);
}

CostMatrix full_cost_matrix(const TimeSeries& a, const TimeSeries& b) {
    detail::require_same_dim(a, b);
    return detail::fill_region(a, b, SearchRegion::full(a.size(), b.size()));
}

WarpPath backtrack(const CostMatrix& matrix) {
    if (!std::isfinite(matrix.distance())) throw DisconnectedRegion();
    std::size_t i = matrix.n();
    std::size_t j = matrix.m();
    WarpPath path;
    path.pairs.reserve(i + j);
    path.pairs.push_back({i, j});
    while (i != 1 || j != 1) {
        const double diag = matrix(i - 1, j - 1);
        const double left = matrix(i, j - 1);
        const double up = matrix(i - 1, j);
        if (diag <= left && diag <= up) {
            --i;
            --j;
        } else if (left <= up) {
            --j;
        } else {
            --i;
        }
        path.pairs.push_back({i, j});
    }
    std::reverse(path.pairs.begin(), path.pairs.end());
    return path;
}

Alignment full_dtw(const TimeSeries& a, const TimeSeries& b) {
    detail::require_same_dim(a, b);
    return detail::align_in_region(a, b, SearchRegion::full(a.size(), b.size()));
}

bool is_valid_warp_path(const WarpPath& path, std::size_t n, std::size_t m) noexcept {
    if (path.pairs.empty()) return false;
    if (path.pairs.front() != Cell{1, 1} || path.pairs.back() != Cell{n, m}) return false;
    for (std::size_t k = 1; k < path.pairs.size(); ++k) {
        const Cell& p = path.pairs[k - 1];
        const Cell& q = path.pairs[k];
        const std::size_t dr = q.row - p.row;
        const std::size_t dc = q.col - p.col;
        if (q.row < p.row || q.col < p.col) return false;
        if (dr > 1 || dc > 1 || (dr == 0 && dc == 0)) return false;
    }
    return true;
}

double path_cost(const TimeSeries& a, const TimeSeries& b, const WarpPath& path) {
    double total = 0.0;
    for (const Cell& c : path.pairs) total += point_distance(a.point(c.row - 1), b.point(c.col - 1));
    return total;
}

}  // namespace mldtw
