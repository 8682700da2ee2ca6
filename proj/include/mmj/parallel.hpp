#pragma once

#include "mmj/matrix.hpp"

#include <cstdint>
#include <functional>

namespace mmj {

/// Worker count: MMJ_THREADS if set and positive, otherwise hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) over contiguous chunks. The first exception is rethrown.
void parallel_for(Index n, const std::function<void(Index)>& body);

/// splitmix64 mix of a base seed with up to two stream identifiers.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ a) ^ (b * 0xd1342543de82ef95ULL));
}

} // namespace mmj
