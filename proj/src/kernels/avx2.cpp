#include <immintrin.h>

#include <algorithm>
#include <array>

#include "mathreuse/kernels/kernels.hpp"

namespace mathreuse::kernels {

namespace {

// Carry resolution for four lanes: index (cin << 8) | (generate << 4) | propagate
// gives the lanes receiving a carry (low 4 bits) and the carry out (bit 4).
constexpr std::array<std::uint8_t, 512> make_carry_table() {
    std::array<std::uint8_t, 512> t{};
    for (unsigned idx = 0; idx < 512; ++idx) {
        unsigned c = idx >> 8;
        const unsigned g = (idx >> 4) & 15;
        const unsigned p = idx & 15;
        unsigned in = 0;
        for (unsigned k = 0; k < 4; ++k) {
            if (c) in |= 1u << k;
            c = ((g >> k) & 1) | (((p >> k) & 1) & c);
        }
        t[idx] = static_cast<std::uint8_t>(in | (c << 4));
    }
    return t;
}

constexpr auto kCarry = make_carry_table();

__m256i lane_ones(unsigned bits) {
    return _mm256_set_epi64x((bits >> 3) & 1, (bits >> 2) & 1, (bits >> 1) & 1, bits & 1);
}

void lcs_advance_tail(std::uint64_t* v, const std::uint64_t* m, std::size_t words, unsigned carry) {
    for (std::size_t w = 0; w < words; ++w) {
        const std::uint64_t x = v[w];
        const std::uint64_t s = x + (x & m[w]);
        const std::uint64_t t = s + carry;
        carry = static_cast<unsigned>(s < x) | static_cast<unsigned>(t < s);
        v[w] = t | (x & ~m[w]);
    }
}

void lcs_advance_avx2(std::uint64_t* v, const std::uint64_t* m, std::size_t words) {
    if (words < 4) {
        lcs_advance_tail(v, m, words, 0);
        return;
    }
    const __m256i sign = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
    const __m256i ones = _mm256_set1_epi64x(-1);
    unsigned carry = 0;
    std::size_t w = 0;
    for (; w + 4 <= words; w += 4) {
        const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + w));
        const __m256i mk = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(m + w));
        __m256i s = _mm256_add_epi64(x, _mm256_and_si256(x, mk));
        const __m256i gen = _mm256_cmpgt_epi64(_mm256_xor_si256(x, sign), _mm256_xor_si256(s, sign));
        const __m256i prop = _mm256_cmpeq_epi64(s, ones);
        const unsigned g = static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(gen)));
        const unsigned p = static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(prop)));
        const unsigned r = kCarry[(carry << 8) | (g << 4) | p];
        s = _mm256_add_epi64(s, lane_ones(r & 15));
        carry = r >> 4;
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(v + w), _mm256_or_si256(s, _mm256_andnot_si256(mk, x)));
    }
    lcs_advance_tail(v + w, m + w, words - w, carry);
}

RowMax git_row_avx2(std::uint32_t symbol, bool symbol_marked, const std::uint32_t* b, const std::uint8_t* b_marked,
                    const std::int32_t* prev, std::int32_t* cur, std::size_t m) {
    cur[0] = 0;
    if (symbol_marked) {
        std::fill(cur + 1, cur + 1 + m, 0);
        return {0, m};
    }
    const __m256i sym = _mm256_set1_epi32(static_cast<int>(symbol));
    const __m256i one = _mm256_set1_epi32(1);
    const __m256i zero = _mm256_setzero_si256();
    __m256i vmax = zero;
    std::size_t j = 0;
    for (; j + 8 <= m; j += 8) {
        const __m256i bj = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + j));
        const __m128i mk8 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(b_marked + j));
        const __m256i unmarked = _mm256_cmpeq_epi32(_mm256_cvtepu8_epi32(mk8), zero);
        const __m256i hit = _mm256_and_si256(_mm256_cmpeq_epi32(bj, sym), unmarked);
        const __m256i pv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prev + j));
        const __m256i c = _mm256_and_si256(_mm256_add_epi32(pv, one), hit);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(cur + j + 1), c);
        vmax = _mm256_max_epi32(vmax, c);
    }
    alignas(32) std::int32_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), vmax);
    std::int32_t best = 0;
    for (std::int32_t x : lanes) best = std::max(best, x);
    for (; j < m; ++j) {
        const std::int32_t c = (b_marked[j] == 0 && b[j] == symbol) ? prev[j] + 1 : 0;
        cur[j + 1] = c;
        best = std::max(best, c);
    }
    if (best == 0) return {0, m};
    const __m256i target = _mm256_set1_epi32(best);
    std::size_t k = 0;
    for (; k + 8 <= m; k += 8) {
        const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(cur + k + 1));
        const unsigned hits =
            static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(c, target))));
        if (hits != 0) return {best, k + static_cast<std::size_t>(__builtin_ctz(hits))};
    }
    for (; k < m; ++k)
        if (cur[k + 1] == best) return {best, k};
    return {best, m};
}

}  // namespace

const KernelSet& avx2_kernel_set() {
    static const KernelSet k{"avx2", lcs_advance_avx2, git_row_avx2};
    return k;
}

}  // namespace mathreuse::kernels
