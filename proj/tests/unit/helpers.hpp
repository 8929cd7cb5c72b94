#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "circol/core.hpp"
#include "circol/instances.hpp"

namespace testing {

using Raw = std::vector<std::pair<std::int64_t, std::int64_t>>;

inline circol::IntervalRepresentation rep_of(const Raw& raw) { return circol::IntervalRepresentation::normalize(raw); }

inline circol::IntervalRepresentation c5() { return rep_of({{1, 4}, {3, 6}, {5, 8}, {7, 10}, {2, 9}}); }
inline circol::IntervalRepresentation p3() { return rep_of({{3, 5}, {1, 4}, {2, 6}}); }
inline circol::IntervalRepresentation nested_pair() { return rep_of({{1, 4}, {2, 3}}); }
inline circol::IntervalRepresentation single() { return rep_of({{1, 2}}); }

inline std::vector<int> all_vertices(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// Random instance with 1..n_max vertices; both size and layout come from (seed, k).
inline circol::IntervalRepresentation random_rep(std::uint64_t seed, std::size_t k, int n_max) {
    circol::SplitMix64 rng(circol::instance_seed(seed, k));
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_max)));
    return circol::generate_one(n, rng.next());
}

} // namespace testing
