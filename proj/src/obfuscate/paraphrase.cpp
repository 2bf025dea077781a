#include <algorithm>

#include "math_sites.hpp"
#include "mathreuse/mathparse/relator.hpp"
#include "mathreuse/mathparse/render.hpp"
#include "mathreuse/obfuscate/operators.hpp"
#include "mathreuse/util/rng.hpp"
#include "mathreuse/util/utf8.hpp"
#include "text_match.hpp"

namespace mathreuse::obfuscate {

using mathparse::ExprKind;
using namespace detail;

std::optional<ExprNode> mirror_relation(const ExprNode& rel) {
    if (rel.kind != ExprKind::Relation) return std::nullopt;
    ExprNode out = rel;
    std::reverse(out.children.begin(), out.children.end());
    std::reverse(out.relator_spans.begin(), out.relator_spans.end());
    const std::size_t n = rel.relators.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto m = mathparse::mirror_lexeme(rel.relators[n - 1 - i]);
        if (!m) return std::nullopt;
        out.relators[i] = *m;
    }
    return out;
}

namespace {

struct Phrase {
    std::u32string text;
    std::size_t group;
    std::size_t index;
};

// Text of a mirrored relation: the operand slices in reverse order joined by
// the mirrored relators.
std::optional<std::u32string> mirrored_source(const Document& doc, const ExprNode& rel) {
    const std::size_t n = rel.relators.size();
    std::u32string out;
    for (std::size_t i = 0; i <= n; ++i) {
        const ExprNode& c = rel.children[n - i];
        if (i > 0) {
            const auto m = mathparse::mirror_lexeme(rel.relators[n - i]);
            if (!m) return std::nullopt;
            out += U" " + u32(*m) + U" ";
        }
        out += doc.text.substr(c.span.start, c.span.length());
    }
    return out;
}

}  // namespace

OperatorResult apply_paraphrase(const Document& doc, const Lexicon& lexicon, const ParaphraseOptions& opts,
                                std::uint64_t seed) {
    util::Rng rng(seed);
    const auto mask = text_mask(doc);
    std::vector<std::string> skipped;

    // Mirrored text of each math run, in run coordinates.
    std::map<std::size_t, std::u32string> run_new;
    if (opts.mirror) {
        for (std::size_t k = 0; k < doc.runs.size(); ++k) {
            const auto& run = doc.runs[k];
            if (!run.is_math() || !run.tree) continue;
            std::u32string text = doc.text.substr(run.span.start, run.span.length());
            bool changed = false;
            const auto rels = stated_relations(*run.tree);
            for (auto it = rels.rbegin(); it != rels.rend(); ++it) {
                const ExprNode& rel = **it;
                if (!rng.chance(opts.mirror_rate)) continue;
                const auto m = mirrored_source(doc, rel);
                if (!m) {
                    skipped.push_back("mirror:" + mathparse::render_latex(rel));
                    continue;
                }
                const std::u32string repl = guard_splice(doc.text, rel.span, *m);
                text.replace(rel.span.start - run.span.start, rel.span.length(), repl);
                changed = true;
            }
            if (changed) run_new[k] = std::move(text);
        }
    }

    std::vector<Edit> edits;
    std::vector<Interval> clauses;
    std::vector<bool> run_used(doc.runs.size(), false);

    if (opts.templates) {
        std::vector<std::vector<TextTemplate>> compiled;
        for (const auto& ct : lexicon.clause_templates) {
            compiled.emplace_back();
            for (const auto& f : ct.forms) compiled.back().emplace_back(f);
        }
        for (std::size_t pos = 0; pos < doc.length(); ++pos) {
            if (!mask[pos]) continue;
            bool found = false;
            for (std::size_t t = 0; t < compiled.size() && !found; ++t) {
                for (std::size_t f = 0; f < compiled[t].size() && !found; ++f) {
                    if (compiled[t][f].first_char() != doc.text[pos]) continue;
                    const auto m = compiled[t][f].match_at(doc, mask, pos);
                    if (!m) continue;
                    std::size_t g = rng.below(compiled[t].size() - 1);
                    if (g >= f) ++g;
                    std::map<std::string, TextTemplate::RunFill> fills;
                    bool mirrored = false;
                    for (const auto& [name, k] : m->runs) {
                        const auto& run = doc.runs[k];
                        const auto it = run_new.find(k);
                        mirrored |= it != run_new.end();
                        fills[name] = {it != run_new.end() ? it->second
                                                           : doc.text.substr(run.span.start, run.span.length()),
                                       trailing_punct(doc, run)};
                        run_used[k] = true;
                    }
                    std::string entry = "clause:" + lexicon.clause_templates[t].name;
                    if (mirrored) entry += "+mirror";
                    edits.push_back({m->span, compiled[t][g].fill(fills, {}), entry});
                    clauses.push_back(m->span);
                    pos = m->span.end - 1;
                    found = true;
                }
            }
        }
    }

    if (!lexicon.synonym_groups.empty()) {
        std::vector<Phrase> phrases;
        for (std::size_t g = 0; g < lexicon.synonym_groups.size(); ++g)
            for (std::size_t i = 0; i < lexicon.synonym_groups[g].size(); ++i)
                phrases.push_back({u32(lexicon.synonym_groups[g][i]), g, i});
        std::stable_sort(phrases.begin(), phrases.end(),
                         [](const Phrase& a, const Phrase& b) { return a.text.size() > b.text.size(); });
        auto in_clause = [&](Interval iv) {
            return std::any_of(clauses.begin(), clauses.end(), [&](const Interval& c) { return c.overlaps(iv); });
        };
        for (std::size_t pos = 0; pos < doc.length(); ++pos) {
            if (!mask[pos] || !is_word_char(doc.text[pos])) continue;
            if (pos > 0 && mask[pos - 1] && is_word_char(doc.text[pos - 1])) continue;
            for (const auto& ph : phrases) {
                bool capital = false;
                auto end = match_phrase(doc, mask, pos, ph.text);
                if (!end && ph.text[0] >= U'a' && ph.text[0] <= U'z') {
                    end = match_phrase(doc, mask, pos, capitalize(ph.text));
                    capital = end.has_value();
                }
                if (!end || in_clause({pos, *end})) continue;
                if (rng.chance(opts.synonym_rate)) {
                    const auto& group = lexicon.synonym_groups[ph.group];
                    std::size_t g = rng.below(group.size() - 1);
                    if (g >= ph.index) ++g;
                    std::u32string repl = u32(group[g]);
                    if (capital) repl = capitalize(std::move(repl));
                    edits.push_back({{pos, *end}, repl, "synonym:" + group[0]});
                }
                pos = *end - 1;
                break;
            }
        }
    }

    for (const auto& [k, text] : run_new)
        if (!run_used[k]) edits.push_back({doc.runs[k].span, text, "mirror"});

    auto out = apply_edits(doc, std::move(edits), ObfuscationOperator::P, seed);
    out.trace.skipped = std::move(skipped);
    return out;
}

}  // namespace mathreuse::obfuscate
