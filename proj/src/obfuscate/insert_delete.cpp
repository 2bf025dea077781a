#include "math_sites.hpp"
#include "mathreuse/mathparse/relator.hpp"
#include "mathreuse/obfuscate/operators.hpp"
#include "mathreuse/util/rng.hpp"
#include "mathreuse/util/utf8.hpp"
#include "rewrite.hpp"
#include "text_match.hpp"

namespace mathreuse::obfuscate {

using mathparse::ExprKind;
using namespace detail;

namespace {

struct StepSite {
    const ExprNode* rel;
    std::size_t child;
    RuleSite site;
};

std::vector<StepSite> step_sites(const Document& doc, const RuleLibrary& rules) {
    std::vector<StepSite> out;
    for (const auto& run : doc.runs) {
        if (!run.is_math() || !run.tree) continue;
        for (const ExprNode* rel : stated_relations(*run.tree)) {
            if (rel->relator_spans.size() != rel->relators.size()) continue;
            for (std::size_t i = 0; i < rel->children.size(); ++i)
                for (auto& s : rule_sites(rel->children[i], rules))
                    if (rules.rules[s.rule].scope == RuleScope::Expression) out.push_back({rel, i, std::move(s)});
        }
    }
    return out;
}

// Positions right after a sentence-ending period in prose.
std::vector<std::size_t> sentence_ends(const Document& doc, const std::vector<bool>& mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < doc.length(); ++i) {
        if (!mask[i] || doc.text[i] != U'.') continue;
        if (i + 1 == doc.length() || (mask[i + 1] && util::is_space(doc.text[i + 1]))) out.push_back(i + 1);
    }
    return out;
}

bool transitive(std::string_view lexeme) {
    using mathparse::Relator;
    const auto r = mathparse::classify_relator(lexeme);
    if (!r) return false;
    switch (*r) {
        case Relator::Eq:
        case Relator::Lt:
        case Relator::Gt:
        case Relator::Le:
        case Relator::Ge:
        case Relator::Equiv:
        case Relator::Subset:
        case Relator::SubsetEq:
            return true;
        default:
            return false;
    }
}

struct Removal {
    Interval span;
    std::string entry;
};

// Middle steps of relation chains whose removal keeps the chain valid.
std::vector<Removal> removable_steps(const Document& doc) {
    std::vector<Removal> out;
    for (const auto& run : doc.runs) {
        if (!run.is_math() || !run.tree) continue;
        for (const ExprNode* rel : stated_relations(*run.tree)) {
            const auto& rs = rel->relator_spans;
            if (rs.size() != rel->relators.size()) continue;
            for (std::size_t k = 1; k + 1 < rel->children.size(); ++k) {
                const std::string& before = rel->relators[k - 1];
                const std::string& after = rel->relators[k];
                if (before == "=" || (before == after && transitive(before)))
                    out.push_back({{rs[k - 1].start, rs[k].start}, "delete:step"});
                else if (after == "=")
                    out.push_back({{rs[k - 1].end, rs[k].end}, "delete:step"});
            }
        }
    }
    return out;
}

std::vector<Removal> removable_fillers(const Document& doc, const std::vector<bool>& mask, const Lexicon& lex) {
    std::vector<Removal> out;
    for (std::size_t pos = 0; pos < doc.length(); ++pos) {
        if (!mask[pos]) continue;
        for (const auto& f : lex.fillers) {
            const auto end = match_phrase(doc, mask, pos, u32(f));
            if (!end) continue;
            std::size_t start = pos;
            std::size_t stop = *end;
            while (start > 0 && mask[start - 1] && util::is_space(doc.text[start - 1])) --start;
            if (start == pos)
                while (stop < doc.length() && mask[stop] && util::is_space(doc.text[stop])) ++stop;
            out.push_back({{start, stop}, "delete:filler"});
            pos = *end - 1;
            break;
        }
    }
    return out;
}

}  // namespace

OperatorResult apply_insert_delete(const Document& doc, const RuleLibrary& expansions, const Lexicon& lexicon,
                                   const InsertDeleteOptions& opts, std::uint64_t seed) {
    util::Rng rng(seed);
    const auto mask = text_mask(doc);
    std::vector<Edit> edits;

    if (opts.mode == InsertDeleteMode::Delete) {
        if (opts.target) {
            if (opts.target->empty() || opts.target->end > doc.length())
                throw OperatorError("deletion target outside the document");
            edits.push_back({*opts.target, {}, "delete:target"});
        } else {
            std::vector<Removal> cands;
            if (opts.unit != InsertUnit::Filler) cands = removable_steps(doc);
            if (cands.empty() && opts.unit != InsertUnit::Step) cands = removable_fillers(doc, mask, lexicon);
            if (!cands.empty()) {
                const auto& pick = cands[rng.below(cands.size())];
                edits.push_back({pick.span, {}, pick.entry});
            }
        }
        return apply_edits(doc, std::move(edits), ObfuscationOperator::ID, seed);
    }

    if (opts.unit != InsertUnit::Filler) {
        auto sites = step_sites(doc, expansions);
        while (!sites.empty()) {
            const std::size_t idx = rng.below(sites.size());
            const StepSite s = sites[idx];
            sites.erase(sites.begin() + static_cast<std::ptrdiff_t>(idx));
            const ExprNode& child = s.rel->children[s.child];
            ExprNode step = child;
            node_at(step, s.site.path) = rewrite_at(child, s.site, expansions);
            const auto& rule = expansions.rules[s.site.rule];
            if (rule.numerically_checkable()) {
                const auto ok = numerically_equivalent(child, step, 1.0, rng.next());
                if (ok && !*ok) continue;
            }
            const std::u32string m = render_u32(step);
            const std::string entry = "insert:step:" + rule.name;
            if (s.child + 1 < s.rel->children.size())
                edits.push_back({{s.rel->relator_spans[s.child].start, s.rel->relator_spans[s.child].start},
                                 U"= " + m + U" ", entry});
            else
                edits.push_back({{s.rel->span.end, s.rel->span.end}, U" = " + m, entry});
            break;
        }
    }
    if (edits.empty() && opts.unit != InsertUnit::Step && !lexicon.fillers.empty()) {
        const auto ends = sentence_ends(doc, mask);
        if (!ends.empty()) {
            const std::size_t at = ends[rng.below(ends.size())];
            const std::string& filler = lexicon.fillers[rng.below(lexicon.fillers.size())];
            edits.push_back({{at, at}, U" " + u32(filler), "insert:filler"});
        }
    }
    return apply_edits(doc, std::move(edits), ObfuscationOperator::ID, seed);
}

}  // namespace mathreuse::obfuscate
