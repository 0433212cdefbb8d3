#include "mldtw/search_region.hpp"

#include <algorithm>
#include <string>

#include "mldtw/error.hpp"

namespace mldtw {

SearchRegion SearchRegion::full(std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) throw InvalidArgument("search region needs n, m >= 1");
    return SearchRegion(m, std::vector<ColumnInterval>(n, ColumnInterval{1, m}));
}

SearchRegion SearchRegion::unrepaired(std::size_t m, std::vector<ColumnInterval> intervals) {
    if (intervals.empty() || m == 0) throw InvalidArgument("search region needs n, m >= 1");
    for (const auto& iv : intervals)
        if (iv.lo < 1 || iv.lo > iv.hi || iv.hi > m)
            throw InvalidArgument("interval [" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) +
                                  "] outside [1, " + std::to_string(m) + "]");
    return SearchRegion(m, std::move(intervals));
}

SearchRegion SearchRegion::from_raw(std::size_t n, std::size_t m, const std::vector<RawInterval>& raw) {
    if (n == 0 || m == 0) throw InvalidArgument("search region needs n, m >= 1");
    if (raw.size() != n)
        throw InvalidArgument("search region expects " + std::to_string(n) + " row intervals, got " +
                              std::to_string(raw.size()));
    const auto mm = static_cast<std::ptrdiff_t>(m);
    std::vector<ColumnInterval> rows(n);
    for (std::size_t r = 0; r < n; ++r) {
        std::ptrdiff_t lo = std::clamp<std::ptrdiff_t>(raw[r].lo, 1, mm);
        std::ptrdiff_t hi = std::clamp<std::ptrdiff_t>(raw[r].hi, 1, mm);
        if (r == 0) lo = 1;
        if (r == n - 1) hi = mm;
        if (r > 0) {
            const ColumnInterval& prev = rows[r - 1];
            const auto plo = static_cast<std::ptrdiff_t>(prev.lo);
            const auto phi = static_cast<std::ptrdiff_t>(prev.hi);
            if (lo > phi + 1) lo = plo;
            lo = std::max(lo, plo);
        }
        hi = std::max(hi, lo);
        rows[r] = {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
    }
    return SearchRegion(m, std::move(rows));
}

bool SearchRegion::contains(std::size_t i, std::size_t j) const noexcept {
    if (i < 1 || i > n()) return false;
    const ColumnInterval& iv = intervals_[i - 1];
    return j >= iv.lo && j <= iv.hi;
}

std::size_t SearchRegion::area() const noexcept {
    std::size_t total = 0;
    for (const auto& iv : intervals_) total += iv.width();
    return total;
}

bool SearchRegion::is_connected() const noexcept {
    if (intervals_.empty()) return false;
    for (std::size_t r = 0; r < intervals_.size(); ++r) {
        const ColumnInterval& iv = intervals_[r];
        if (iv.lo < 1 || iv.lo > iv.hi || iv.hi > m_) return false;
        if (r > 0) {
            const ColumnInterval& prev = intervals_[r - 1];
            if (iv.lo > prev.hi + 1 || iv.hi < prev.lo) return false;
        }
    }
    return contains(1, 1) && contains(n(), m_);
}

}  // namespace mldtw
