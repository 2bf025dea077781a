#include <algorithm>
#include <unordered_map>

#include "mathreuse/detect/detect.hpp"

namespace mathreuse::detect {

LcisResult lcis(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    const std::size_t w = m + 1;
    // suffix[i * w + j]: LCS length of a[i..] and b[j..]
    std::vector<std::uint32_t> suffix((n + 1) * w, 0);
    for (std::size_t i = n; i-- > 0;)
        for (std::size_t j = m; j-- > 0;)
            suffix[i * w + j] = a[i] == b[j] ? suffix[(i + 1) * w + j + 1] + 1
                                             : std::max(suffix[(i + 1) * w + j], suffix[i * w + j + 1]);

    std::unordered_map<std::uint32_t, std::vector<std::size_t>> where;
    for (std::size_t j = 0; j < m; ++j) where[b[j]].push_back(j);

    LcisResult res;
    res.length = suffix[0];
    std::size_t i = 0;
    std::size_t j = 0;
    for (std::size_t need = res.length; need > 0; --need) {
        // Earliest source index that can still complete an optimal alignment;
        // its first occurrence on the inspected side leaves the most room.
        for (;; ++i) {
            const auto it = where.find(a[i]);
            if (it == where.end()) continue;
            const auto pos = std::lower_bound(it->second.begin(), it->second.end(), j);
            if (pos == it->second.end()) continue;
            if (suffix[(i + 1) * w + *pos + 1] + 1 == need) {
                res.pairs.emplace_back(i, *pos);
                j = *pos + 1;
                ++i;
                break;
            }
        }
    }
    return res;
}

LcisResult lcis(const IdentStream& a, const IdentStream& b) {
    SymbolTable t;
    const auto x = encode(a, t);
    const auto y = encode(b, t);
    return lcis(x, y);
}

}  // namespace mathreuse::detect
