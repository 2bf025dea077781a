#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace mathreuse::kernels {

// Best cell of one row of the common-substring table.
struct RowMax {
    std::int32_t value = 0;
    std::size_t index = 0;  // first j with cur[j + 1] == value; m when value == 0
};

struct KernelSet {
    std::string_view name;

    // One step of the bit-parallel LCS recurrence over `words` 64-bit words:
    // v = (v + (v & m)) | (v & ~m), with the carry running across words.
    void (*lcs_advance)(std::uint64_t* v, const std::uint64_t* m, std::size_t words);

    // cur[0] = 0 and, for j < m, cur[j + 1] = prev[j] + 1 when b[j] == symbol
    // and neither side is marked, else 0. prev and cur hold m + 1 entries.
    RowMax (*git_row)(std::uint32_t symbol, bool symbol_marked, const std::uint32_t* b,
                      const std::uint8_t* b_marked, const std::int32_t* prev, std::int32_t* cur, std::size_t m);
};

const KernelSet& scalar_kernels();

// nullptr when the build or the CPU lacks AVX2.
const KernelSet* avx2_kernels();

// Chosen once per process: MATHREUSE_SIMD=scalar forces the reference
// kernels, MATHREUSE_SIMD=avx2 requests AVX2 (falling back when absent),
// anything else picks the best available.
const KernelSet& active_kernels();

// LCS length of two symbol sequences through the given kernel set.
std::size_t lcs_length(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                       const KernelSet& k = active_kernels());

}  // namespace mathreuse::kernels
