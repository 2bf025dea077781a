#include "mathreuse/util/rng.hpp"

namespace mathreuse::util {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace mathreuse::util
