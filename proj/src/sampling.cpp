#include "mldtw/sampling.hpp"

#include <random>
#include <set>

namespace mldtw {

std::vector<std::pair<std::size_t, std::size_t>> sample_ordered_pairs(std::size_t k, std::size_t count,
                                                                      std::uint64_t seed) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (k < 2) return out;
    const std::uint64_t total = static_cast<std::uint64_t>(k) * (k - 1);
    std::vector<std::uint64_t> codes;
    if (count == 0 || count >= total) {
        codes.resize(total);
        for (std::uint64_t p = 0; p < total; ++p) codes[p] = p;
    } else {
        // Floyd's sampling without replacement.
        std::mt19937_64 rng(seed);
        std::set<std::uint64_t> chosen;
        for (std::uint64_t j = total - count; j < total; ++j) {
            const std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
            if (!chosen.insert(t).second) chosen.insert(j);
        }
        codes.assign(chosen.begin(), chosen.end());
    }
    out.reserve(codes.size());
    for (const std::uint64_t p : codes) {
        const std::size_t i = static_cast<std::size_t>(p / (k - 1));
        std::size_t j = static_cast<std::size_t>(p % (k - 1));
        if (j >= i) ++j;
        out.emplace_back(i, j);
    }
    return out;
}

}  // namespace mldtw
