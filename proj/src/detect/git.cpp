#include <algorithm>

#include "mathreuse/detect/detect.hpp"

namespace mathreuse::detect {

std::vector<Tile> git(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, std::size_t min_tile,
                      const kernels::KernelSet& k) {
    if (min_tile < 1) throw std::invalid_argument("git: min_tile must be >= 1");
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    std::vector<std::uint8_t> a_marked(n, 0);
    std::vector<std::uint8_t> b_marked(m + 8, 0);  // padded for vector loads
    std::vector<std::int32_t> prev(m + 1, 0);
    std::vector<std::int32_t> cur(m + 1, 0);
    std::vector<std::pair<std::size_t, std::size_t>> ends;  // (i, j) of the longest matches
    std::vector<Tile> tiles;

    for (;;) {
        std::int32_t best = 0;
        ends.clear();
        std::fill(prev.begin(), prev.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const kernels::RowMax r = k.git_row(a[i], a_marked[i] != 0, b.data(), b_marked.data(), prev.data(),
                                                cur.data(), m);
            if (r.value > 0 && r.value >= best) {
                if (r.value > best) {
                    best = r.value;
                    ends.clear();
                }
                for (std::size_t j = r.index; j < m; ++j)
                    if (cur[j + 1] == best) ends.emplace_back(i, j);
            }
            std::swap(prev, cur);
        }
        if (best < static_cast<std::int32_t>(min_tile)) break;

        // Matches of the maximal length in (source end, inspected end) order;
        // those overlapping a tile taken in this round are dropped.
        const auto len = static_cast<std::size_t>(best);
        for (const auto& [i, j] : ends) {
            const std::size_t s = i + 1 - len;
            const std::size_t t = j + 1 - len;
            const bool free_a = std::none_of(a_marked.begin() + static_cast<std::ptrdiff_t>(s),
                                             a_marked.begin() + static_cast<std::ptrdiff_t>(i + 1),
                                             [](std::uint8_t x) { return x != 0; });
            const bool free_b = std::none_of(b_marked.begin() + static_cast<std::ptrdiff_t>(t),
                                             b_marked.begin() + static_cast<std::ptrdiff_t>(j + 1),
                                             [](std::uint8_t x) { return x != 0; });
            if (!free_a || !free_b) continue;
            std::fill_n(a_marked.begin() + static_cast<std::ptrdiff_t>(s), len, 1);
            std::fill_n(b_marked.begin() + static_cast<std::ptrdiff_t>(t), len, 1);
            tiles.push_back({{s, i + 1}, {t, j + 1}, len});
        }
    }
    std::sort(tiles.begin(), tiles.end(), [](const Tile& x, const Tile& y) {
        return x.src_range.start < y.src_range.start;
    });
    return tiles;
}

std::vector<Tile> git(const IdentStream& a, const IdentStream& b, std::size_t min_tile) {
    SymbolTable t;
    const auto x = encode(a, t);
    const auto y = encode(b, t);
    return git(x, y, min_tile);
}

std::size_t total_length(const std::vector<Tile>& tiles) {
    std::size_t n = 0;
    for (const auto& t : tiles) n += t.length;
    return n;
}

namespace {

Interval leaf_hull(const IdentStream& s, Interval range) {
    Interval h = s.items[range.start].span;
    for (std::size_t k = range.start + 1; k < range.end; ++k) h = util::hull(h, s.items[k].span);
    return h;
}

}  // namespace

std::vector<Detection> tiles_to_detections(const std::vector<Tile>& tiles, const IdentStream& a,
                                           const IdentStream& b, std::size_t gap, const std::string& detector) {
    std::vector<Tile> order = tiles;
    std::sort(order.begin(), order.end(), [](const Tile& x, const Tile& y) {
        return x.src_range.start < y.src_range.start;
    });
    std::vector<Detection> out;
    for (const auto& t : order) {
        const Interval s = leaf_hull(a, t.src_range);
        const Interval i = leaf_hull(b, t.insp_range);
        if (!out.empty()) {
            Detection& d = out.back();
            if (util::gap_between(d.src.interval(), s) <= gap && util::gap_between(d.insp.interval(), i) <= gap) {
                const Interval hs = util::hull(d.src.interval(), s);
                const Interval hi = util::hull(d.insp.interval(), i);
                d.src.start = hs.start;
                d.src.end = hs.end;
                d.insp.start = hi.start;
                d.insp.end = hi.end;
                d.score += static_cast<double>(t.length);
                continue;
            }
        }
        out.push_back({{a.doc_id, s.start, s.end}, {b.doc_id, i.start, i.end}, static_cast<double>(t.length), detector});
    }
    return out;
}

}  // namespace mathreuse::detect
