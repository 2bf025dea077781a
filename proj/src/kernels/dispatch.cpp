#include <algorithm>
#include <cstdlib>
#include <string>
#include <unordered_map>
#include <vector>

#include "mathreuse/kernels/kernels.hpp"

namespace mathreuse::kernels {

#ifdef MATHREUSE_HAVE_AVX2
const KernelSet& avx2_kernel_set();  // avx2.cpp
#endif

const KernelSet* avx2_kernels() {
#ifdef MATHREUSE_HAVE_AVX2
    static const bool ok = __builtin_cpu_supports("avx2");
    return ok ? &avx2_kernel_set() : nullptr;
#else
    return nullptr;
#endif
}

const KernelSet& active_kernels() {
    static const KernelSet& chosen = [] () -> const KernelSet& {
        const char* env = std::getenv("MATHREUSE_SIMD");
        const std::string want = env ? env : "auto";
        if (want == "scalar") return scalar_kernels();
        if (const KernelSet* k = avx2_kernels()) return *k;
        return scalar_kernels();
    }();
    return chosen;
}

std::size_t lcs_length(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, const KernelSet& k) {
    if (a.empty() || b.empty()) return 0;
    const std::size_t words = (a.size() + 63) / 64;
    std::unordered_map<std::uint32_t, std::vector<std::uint64_t>> masks;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto& m = masks[a[i]];
        if (m.empty()) m.assign(words, 0);
        m[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    std::vector<std::uint64_t> v(words, ~std::uint64_t{0});
    for (std::uint32_t s : b) {
        const auto it = masks.find(s);
        if (it != masks.end()) k.lcs_advance(v.data(), it->second.data(), words);
    }
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < a.size(); ++i) zeros += ((v[i / 64] >> (i % 64)) & 1) == 0;
    return zeros;
}

}  // namespace mathreuse::kernels
