#include <algorithm>

#include "math_sites.hpp"
#include "mathreuse/mathparse/pattern.hpp"
#include "mathreuse/obfuscate/operators.hpp"
#include "mathreuse/util/utf8.hpp"
#include "text_match.hpp"

namespace mathreuse::obfuscate {

using mathparse::ExprKind;
using namespace detail;

namespace {

// Binds the entry's metavariables to identifiers only.
std::optional<std::map<std::string, std::string>> bind_identifiers(const ExprNode& formula, const MathTextEntry& entry) {
    mathparse::Bindings b;
    if (!mathparse::match(entry.math, formula, b)) return std::nullopt;
    std::map<std::string, std::string> names;
    for (const auto& [k, v] : b) {
        if (v.kind != ExprKind::Identifier) return std::nullopt;
        names[k] = v.text;
    }
    return names;
}

std::u32string formula_text(const TextTemplate::Match& m, const MathTextEntry& entry,
                            const std::u32string& sentence_end) {
    mathparse::Bindings b(m.idents.begin(), m.idents.end());
    return U"$" + render_u32(mathparse::instantiate(entry.math, b)) + sentence_end + U"$";
}

}  // namespace

std::optional<std::string> math_to_text(const ExprNode& formula, const MathTextEntry& entry) {
    const auto names = bind_identifiers(formula, entry);
    if (!names) return std::nullopt;
    return util::encode_utf8(TextTemplate(entry.text).fill({}, *names));
}

std::optional<ExprNode> text_to_math(std::string_view sentence, const MathTextEntry& entry) {
    const Document doc = docmodel::segment_document("", sentence);
    const auto mask = text_mask(doc);
    std::size_t start = 0;
    while (start < doc.length() && util::is_space(doc.text[start])) ++start;
    const auto m = TextTemplate(entry.text).match_at(doc, mask, start);
    if (!m) return std::nullopt;
    for (std::size_t i = m->span.end; i < doc.length(); ++i)
        if (!util::is_space(doc.text[i])) return std::nullopt;
    mathparse::Bindings b(m->idents.begin(), m->idents.end());
    return mathparse::instantiate(entry.math, b);
}

OperatorResult apply_tmmt(const Document& doc, const Lexicon& lexicon, TmmtDirection direction, std::uint64_t seed) {
    const auto mask = text_mask(doc);
    std::vector<Edit> cands;

    if (direction != TmmtDirection::MathToText) {
        std::vector<TextTemplate> tpls;
        for (const auto& e : lexicon.math_text) tpls.emplace_back(e.text);
        for (std::size_t pos = 0; pos < doc.length(); ++pos) {
            if (!mask[pos]) continue;
            for (std::size_t k = 0; k < tpls.size(); ++k) {
                if (tpls[k].first_char() != doc.text[pos]) continue;
                const auto m = tpls[k].match_at(doc, mask, pos);
                if (!m) continue;
                const std::u32string end = tpls[k].ends_with_punct() ? std::u32string(1, doc.text[m->span.end - 1])
                                                                     : std::u32string();
                cands.push_back({m->span, formula_text(*m, lexicon.math_text[k], end),
                                 "tmmt:text-to-math:" + lexicon.math_text[k].name});
                pos = m->span.end - 1;
                break;
            }
        }
    }

    if (direction != TmmtDirection::TextToMath) {
        for (const auto& run : doc.runs) {
            if (!run.is_math() || !run.tree) continue;
            for (const auto& entry : lexicon.math_text) {
                const auto names = bind_identifiers(*run.tree, entry);
                if (!names) continue;
                const TextTemplate tpl(entry.text);
                Interval site = run.span;
                if (tpl.ends_with_punct() && site.end < doc.length() && mask[site.end] &&
                    is_sentence_punct(doc.text[site.end]))
                    ++site.end;
                cands.push_back({site, tpl.fill({}, *names), "tmmt:math-to-text:" + entry.name});
                break;
            }
        }
    }

    std::stable_sort(cands.begin(), cands.end(),
                     [](const Edit& a, const Edit& b) { return a.original.start < b.original.start; });
    std::vector<Edit> edits;
    for (auto& c : cands)
        if (edits.empty() || edits.back().original.end <= c.original.start) edits.push_back(std::move(c));
    return apply_edits(doc, std::move(edits), ObfuscationOperator::TMMT, seed);
}

}  // namespace mathreuse::obfuscate
