#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace mldtw {

/// `count` distinct ordered pairs (i, j), i != j, drawn uniformly without
/// replacement from [0, k)^2 with a seeded generator, returned in (i, j)
/// order. count == 0 or count >= k(k-1) yields every pair.
std::vector<std::pair<std::size_t, std::size_t>> sample_ordered_pairs(std::size_t k, std::size_t count,
                                                                      std::uint64_t seed);

}  // namespace mldtw
