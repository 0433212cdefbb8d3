#include "mldtw/region.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mldtw/error.hpp"

namespace mldtw {

int quantize(double x, int quantum) {
    if (quantum < 1) throw InvalidArgument("quantization base must be >= 1");
    return quantum * static_cast<int>(std::nearbyint(x / quantum));
}

std::array<int, kWaypointCount> interior_columns(std::size_t m) {
    std::array<int, kWaypointCount> cols{};
    for (std::size_t k = 1; k <= kWaypointCount; ++k)
        cols[k - 1] = static_cast<int>(std::nearbyint(static_cast<double>(k) * static_cast<double>(m) / 6.0));
    return cols;
}

CenterPath center_path(std::span<const Waypoint> waypoints, std::size_t n, std::size_t m) {
    if (n < 2 || m < 2) throw InvalidArgument("center path needs n, m >= 2");
    const int last_row = static_cast<int>(n) - 1;
    const int last_col = static_cast<int>(m) - 1;

    std::vector<Waypoint> raw{{0, 0}};
    auto push = [&raw](int r, int c) { raw.push_back({r, c}); };

    std::vector<Waypoint> targets(waypoints.begin(), waypoints.end());
    targets.push_back({last_row, last_col});
    for (const Waypoint& wp : targets) {
        int cur_row = raw.back().row;
        const int cur_col = raw.back().col;
        const int target_row = std::min(std::max(cur_row + 1, wp.row), last_row);
        const int target_col = std::min(std::max(cur_col + 1, wp.col), last_col);
        const int span = target_col - cur_col;
        if (span <= 0) {
            while (cur_row < target_row) push(cur_row++, cur_col);
            continue;
        }
        const double slope = std::max(0.0, static_cast<double>(target_row - cur_row) / span);
        int row = cur_row;
        for (int step = 0; step < span; ++step) {
            const int col = cur_col + step;
            push(row, col);
            const int climb_to =
                step == span - 1 ? target_row : static_cast<int>(std::nearbyint(step * slope)) + cur_row;
            for (int r = row; r < climb_to; ++r) {
                push(r, col);
                row = r;
            }
        }
    }

    // Close the staircase to the bottom-right corner.
    Waypoint tail = raw.back();
    while (tail.row < last_row || tail.col < last_col) {
        const int dr = last_row - tail.row;
        const int dc = last_col - tail.col;
        if (dr > dc)
            ++tail.row;
        else if (dc > dr)
            ++tail.col;
        else
            ++tail.row, ++tail.col;
        raw.push_back(tail);
    }

    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    CenterPath path;
    path.cells.reserve(raw.size());
    for (const Waypoint& w : raw)
        path.cells.push_back({static_cast<std::size_t>(w.row), static_cast<std::size_t>(w.col)});
    return path;
}

WidthProfile width_profile(std::span<const double> confidences, std::size_t n, std::size_t m, int endpoint_width) {
    if (n < 1) throw InvalidArgument("width profile needs n >= 1");
    std::vector<int> anchors{endpoint_width};
    for (double c : confidences) {
        if (!(c > 0.0 && c <= 1.0))
            throw InvalidArgument("confidence " + std::to_string(c) + " outside (0, 1]");
        anchors.push_back(static_cast<int>((2.0 - c) * (static_cast<double>(m) / 10.0)));
    }
    anchors.push_back(endpoint_width);

    const std::size_t seg = n / 6;
    std::vector<int> widths;
    widths.reserve(anchors.size() * std::max<std::size_t>(seg, 1) + 2);
    for (std::size_t a = 0; a + 1 < anchors.size(); ++a) {
        widths.push_back(anchors[a]);
        if (seg == 0) continue;
        const double slope = static_cast<double>(anchors[a + 1] - anchors[a]) / static_cast<double>(seg);
        for (std::size_t j = 0; j + 1 < seg; ++j)
            widths.push_back(static_cast<int>(anchors[a] + slope * static_cast<double>(j)));
    }
    widths.push_back(anchors.back());
    widths.push_back(anchors.back());

    widths.resize(n, endpoint_width);
    widths.back() = endpoint_width;
    for (int& w : widths) w = std::max(w, 1);
    return {std::move(widths)};
}

std::vector<RawInterval> raw_region_intervals(const CenterPath& path, const WidthProfile& widths, std::size_t n,
                                              std::size_t m) {
    if (widths.widths.size() != n)
        throw DimensionMismatch("width profile has " + std::to_string(widths.widths.size()) + " rows, expected " +
                                std::to_string(n));
    std::vector<std::ptrdiff_t> col_sum(n, 0);
    std::vector<std::ptrdiff_t> col_count(n, 0);
    for (const Cell& c : path.cells) {
        if (c.row >= n || c.col >= m) throw DimensionMismatch("center path leaves the matrix");
        col_sum[c.row] += static_cast<std::ptrdiff_t>(c.col);
        ++col_count[c.row];
    }

    const auto mm = static_cast<std::ptrdiff_t>(m);
    std::vector<RawInterval> raw(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const std::ptrdiff_t count = col_count[i - 1];
        const std::ptrdiff_t middle = count ? col_sum[i - 1] / count : 0;
        std::ptrdiff_t width = widths.widths[i - 1];
        if (count >= width) width = count + 1;

        std::ptrdiff_t lo, hi;
        if (middle - width / 2 < 0) {
            lo = 1;
            hi = std::min(mm, lo + width);
        } else {
            hi = std::min(mm, middle + width / 2 + 1);
            lo = hi - width;
        }
        if (i == 1) {
            lo = 1;
            hi = std::min(mm, lo + width);
        } else if (i == n) {
            hi = mm;
            lo = hi - width;
        }
        raw[i - 1] = {lo, hi};
    }
    return raw;
}

SearchRegion region_from_path(const CenterPath& path, const WidthProfile& widths, std::size_t n, std::size_t m) {
    return SearchRegion::from_raw(n, m, raw_region_intervals(path, widths, n, m));
}

}  // namespace mldtw
