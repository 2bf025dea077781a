#include "mathreuse/kernels/kernels.hpp"

namespace mathreuse::kernels {

namespace {

void lcs_advance_scalar(std::uint64_t* v, const std::uint64_t* m, std::size_t words) {
    std::uint64_t carry = 0;
    for (std::size_t w = 0; w < words; ++w) {
        const std::uint64_t x = v[w];
        const std::uint64_t s = x + (x & m[w]);
        const std::uint64_t t = s + carry;
        carry = static_cast<std::uint64_t>(s < x) | static_cast<std::uint64_t>(t < s);
        v[w] = t | (x & ~m[w]);
    }
}

RowMax git_row_scalar(std::uint32_t symbol, bool symbol_marked, const std::uint32_t* b, const std::uint8_t* b_marked,
                      const std::int32_t* prev, std::int32_t* cur, std::size_t m) {
    RowMax best{0, m};
    cur[0] = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const bool hit = !symbol_marked && b_marked[j] == 0 && b[j] == symbol;
        const std::int32_t c = hit ? prev[j] + 1 : 0;
        cur[j + 1] = c;
        if (c > best.value) best = {c, j};
    }
    return best;
}

}  // namespace

const KernelSet& scalar_kernels() {
    static const KernelSet k{"scalar", lcs_advance_scalar, git_row_scalar};
    return k;
}

}  // namespace mathreuse::kernels
