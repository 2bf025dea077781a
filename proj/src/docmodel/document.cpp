#include "mathreuse/docmodel/document.hpp"

#include <array>

#include "mathreuse/mathparse/parser.hpp"
#include "mathreuse/util/utf8.hpp"

namespace mathreuse::docmodel {

std::string Document::slice(Interval iv) const {
    return util::encode_utf8(std::u32string_view(text).substr(iv.start, iv.length()));
}

std::string Document::body_latex(const Run& r) const { return slice(r.body); }

std::string Document::utf8() const { return util::encode_utf8(text); }

std::vector<const Run*> Document::math_runs() const {
    std::vector<const Run*> out;
    for (const auto& r : runs)
        if (r.is_math()) out.push_back(&r);
    return out;
}

namespace {

constexpr std::array<std::u32string_view, 12> kEnvironments = {
    U"equation", U"equation*", U"align", U"align*", U"gather", U"gather*",
    U"multline", U"multline*", U"eqnarray", U"eqnarray*", U"displaymath", U"math"};

bool starts_with(std::u32string_view s, std::size_t at, std::u32string_view prefix) {
    return s.size() >= at + prefix.size() && s.substr(at, prefix.size()) == prefix;
}

struct Opener {
    std::size_t length = 0;  // 0: not a math opener
    std::u32string closer;
    std::string name;
};

Opener opener_at(std::u32string_view s, std::size_t i) {
    if (s[i] == U'$') {
        if (starts_with(s, i, U"$$")) return {2, U"$$", "$$"};
        return {1, U"$", "$"};
    }
    if (s[i] != U'\\') return {};
    if (starts_with(s, i, U"\\(")) return {2, U"\\)", "\\("};
    if (starts_with(s, i, U"\\[")) return {2, U"\\]", "\\["};
    if (starts_with(s, i, U"\\begin{")) {
        for (auto env : kEnvironments) {
            std::u32string open = U"\\begin{";
            open += env;
            open += U"}";
            if (starts_with(s, i, open)) {
                std::u32string close = U"\\end{";
                close += env;
                close += U"}";
                return {open.size(), close, util::encode_utf8(env)};
            }
        }
    }
    return {};
}

// Position of `closer` at or after `from`, skipping escaped characters.
std::size_t find_closer(std::u32string_view s, std::size_t from, std::u32string_view closer) {
    std::size_t j = from;
    while (j < s.size()) {
        if (starts_with(s, j, closer)) return j;
        j += s[j] == U'\\' ? 2 : 1;
    }
    return std::u32string_view::npos;
}

}  // namespace

Document segment_document(std::string id, std::u32string text) {
    Document doc;
    doc.id = std::move(id);
    doc.text = std::move(text);
    const std::u32string_view s(doc.text);
    std::size_t text_start = 0;
    std::size_t i = 0;
    auto flush_text = [&](std::size_t end) {
        if (end > text_start) doc.runs.push_back(Run{RunKind::Text, {text_start, end}, {text_start, end}, {}, {}, {}});
    };
    while (i < s.size()) {
        const char32_t c = s[i];
        if (c != U'$' && c != U'\\') {
            ++i;
            continue;
        }
        const Opener op = opener_at(s, i);
        if (op.length == 0) {
            i += c == U'\\' ? 2 : 1;  // \$ and other escapes stay in the text
            continue;
        }
        const std::size_t body_start = i + op.length;
        const std::size_t close = find_closer(s, body_start, op.closer);
        if (close == std::u32string_view::npos)
            throw SegmentError(i, "unterminated math delimiter '" + op.name + "'");
        flush_text(i);
        Run run;
        run.kind = RunKind::Math;
        run.span = {i, close + op.closer.size()};
        run.body = {body_start, close};
        run.delimiter = op.name;
        mathparse::LexOptions lex;
        lex.base_offset = body_start;
        try {
            run.tree = mathparse::parse_latex(s.substr(body_start, close - body_start), lex);
        } catch (const mathparse::ParseError& e) {
            run.failure = ParseFailure{e.offset(), e.what()};
        }
        doc.runs.push_back(std::move(run));
        i = close + op.closer.size();
        text_start = i;
    }
    flush_text(s.size());
    return doc;
}

Document segment_document(std::string id, std::string_view latex_utf8) {
    return segment_document(std::move(id), util::decode_utf8(latex_utf8));
}

std::string_view to_string(CaseType t) {
    switch (t) {
        case CaseType::Text: return "text";
        case CaseType::Math: return "math";
        case CaseType::Both: return "both";
    }
    return "text";
}

std::optional<CaseType> parse_case_type(std::string_view s) {
    if (s == "text") return CaseType::Text;
    if (s == "math") return CaseType::Math;
    if (s == "both") return CaseType::Both;
    return std::nullopt;
}

CaseType classify_span(const Document& doc, Interval span) {
    std::size_t math = 0;
    std::size_t prose = 0;
    for (const auto& r : doc.runs) {
        const std::size_t lo = std::max(r.span.start, span.start);
        const std::size_t hi = std::min(r.span.end, span.end);
        for (std::size_t k = lo; k < hi; ++k) {
            if (util::is_space(doc.text[k])) continue;
            (r.is_math() ? math : prose) += 1;
        }
    }
    if (math > 0 && prose > 0) return CaseType::Both;
    return math > 0 ? CaseType::Math : CaseType::Text;
}

bool touches_math(const Document& doc, Interval span) {
    for (const auto& r : doc.runs)
        if (r.is_math() && r.span.overlaps(span)) return true;
    return false;
}

}  // namespace mathreuse::docmodel
