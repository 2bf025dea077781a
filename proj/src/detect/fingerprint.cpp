#include <algorithm>
#include <unordered_map>

#include "mathreuse/detect/detect.hpp"
#include "mathreuse/mathparse/normalize.hpp"
#include "mathreuse/util/hash.hpp"
#include "mathreuse/util/utf8.hpp"

namespace mathreuse::detect {

namespace {

bool word_char(char32_t c) { return util::is_ascii_letter(c) || util::is_ascii_digit(c) || c > 0x7F; }

void leaves(const mathparse::ExprNode& e, std::vector<std::string>& out) {
    if (e.is_leaf()) out.push_back(e.text);
    for (const auto& c : e.children) leaves(c, out);
}

void text_words(const Document& doc, Interval span, std::vector<FpToken>& out) {
    std::size_t i = span.start;
    while (i < span.end) {
        if (!word_char(doc.text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        std::u32string w;
        for (; j < span.end && word_char(doc.text[j]); ++j) {
            char32_t c = doc.text[j];
            if (c >= U'A' && c <= U'Z') c += U'a' - U'A';
            w.push_back(c);
        }
        out.push_back({util::encode_utf8(w), {i, j}});
        i = j;
    }
}

struct Match {
    Interval src;
    Interval insp;
    double score;
};

}  // namespace

std::vector<FpToken> fingerprint_tokens(const Document& doc) {
    std::vector<FpToken> out;
    for (const auto& run : doc.runs) {
        if (!run.is_math()) {
            text_words(doc, run.span, out);
        } else if (run.tree) {
            std::vector<std::string> names;
            leaves(mathparse::normalize(*run.tree), names);
            for (auto& n : names) out.push_back({std::move(n), run.span});
        } else {
            out.push_back({doc.slice(run.body), run.span});
        }
    }
    return out;
}

std::vector<std::uint64_t> ngram_hashes(const std::vector<FpToken>& tokens, std::size_t n) {
    std::vector<std::uint64_t> out;
    if (n == 0 || tokens.size() < n) return out;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::uint64_t h = util::kFnvOffset;
        for (std::size_t k = 0; k < n; ++k) {
            h = util::fnv1a(tokens[i + k].text, h);
            h = util::fnv1a("\x1f", h);
        }
        out.push_back(h);
    }
    return out;
}

std::vector<Detection> ngram_fingerprint_detect(const Document& a, const Document& b, std::size_t n,
                                                std::size_t threshold) {
    if (n < 2) throw std::invalid_argument("fingerprint: n must be >= 2");
    const auto ta = fingerprint_tokens(a);
    const auto tb = fingerprint_tokens(b);
    const auto ga = ngram_hashes(ta, n);
    const auto gb = ngram_hashes(tb, n);
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> where;
    for (std::size_t j = 0; j < gb.size(); ++j) where[gb[j]].push_back(j);

    std::vector<Match> found;
    for (std::size_t i = 0; i < ga.size(); ++i) {
        const auto it = where.find(ga[i]);
        if (it == where.end()) continue;
        for (std::size_t j : it->second) {
            if (i > 0 && j > 0 && ga[i - 1] == gb[j - 1]) continue;  // not the start of a diagonal run
            std::size_t len = 1;
            while (i + len < ga.size() && j + len < gb.size() && ga[i + len] == gb[j + len]) ++len;
            if (len < std::max<std::size_t>(threshold, 1)) continue;
            const std::size_t last = len + n - 2;
            found.push_back({util::hull(ta[i].span, ta[i + last].span), util::hull(tb[j].span, tb[j + last].span),
                             static_cast<double>(len)});
        }
    }

    // Merge runs overlapping on both sides until stable.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t x = 0; x < found.size() && !changed; ++x)
            for (std::size_t y = x + 1; y < found.size() && !changed; ++y)
                if (found[x].src.overlaps(found[y].src) && found[x].insp.overlaps(found[y].insp)) {
                    found[x] = {util::hull(found[x].src, found[y].src), util::hull(found[x].insp, found[y].insp),
                                found[x].score + found[y].score};
                    found.erase(found.begin() + static_cast<std::ptrdiff_t>(y));
                    changed = true;
                }
    }
    std::sort(found.begin(), found.end(), [](const Match& x, const Match& y) {
        return std::tie(x.src, x.insp) < std::tie(y.src, y.insp);
    });
    std::vector<Detection> out;
    for (const auto& f : found)
        out.push_back({{a.id, f.src.start, f.src.end}, {b.id, f.insp.start, f.insp.end}, f.score, "fingerprint-baseline"});
    return out;
}

}  // namespace mathreuse::detect
