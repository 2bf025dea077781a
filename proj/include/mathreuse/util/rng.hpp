#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mathreuse::util {

// Seeded generator whose outputs are identical on every platform. The engine
// is std::mt19937_64 (fully specified by the standard); the bounded draws are
// done here instead of through std::uniform_*_distribution, whose algorithms
// are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    bool chance(double p) { return p >= 1.0 || (p > 0.0 && unit() < p); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

// Derives an independent stream seed from a parent seed and a salt.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace mathreuse::util
