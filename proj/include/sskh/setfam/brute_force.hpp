#pragma once

#include <cstdint>

#include "sskh/setfam/family.hpp"

namespace sskh::setfam {

struct BruteForceResult {
    std::size_t size = 0;
    SetFamily witness;   // lexicographically least maximum family over {1..n}
};

// Exact maximum number of k-subsets of {1..n} with pairwise intersections <= t.
BruteForceResult brute_force_max(std::int64_t n, std::int64_t k, std::int64_t t,
                                 std::int64_t guard = 100000);

}  // namespace sskh::setfam
