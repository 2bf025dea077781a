#include <set>

#include "math_sites.hpp"
#include "mathreuse/obfuscate/operators.hpp"
#include "mathreuse/util/rng.hpp"
#include "mathreuse/util/utf8.hpp"
#include "text_match.hpp"

namespace mathreuse::obfuscate {

using mathparse::ExprKind;
using namespace detail;

namespace {

void validate_names(const std::set<std::string>& present, const IdentifierMap& rename) {
    std::map<std::string, std::string> inverse;
    for (const auto& [from, to] : rename) {
        const auto [it, fresh] = inverse.emplace(to, from);
        if (!fresh) throw OperatorError("rename is not injective: " + it->second + " and " + from + " both map to " + to);
    }
    for (const auto& id : present) {
        if (rename.count(id)) continue;
        const auto it = inverse.find(id);
        if (it != inverse.end())
            throw OperatorError("rename maps " + it->second + " onto " + id + ", which stays in use");
    }
}

std::set<std::string> document_identifiers(const Document& doc) {
    std::set<std::string> out;
    for (const auto& run : doc.runs)
        if (run.is_math() && run.tree)
            for (const auto& id : mathparse::identifiers(*run.tree)) out.insert(id);
    return out;
}

ExprNode half_power(ExprNode base, Interval site) {
    ExprNode s;
    s.kind = ExprKind::Scripted;
    s.span = site;
    s.has_sup = true;
    s.children.push_back(std::move(base));
    s.children.push_back(ExprNode::op("/", {ExprNode::number("1", site), ExprNode::number("2", site)}, site));
    return s;
}

void swap_synonyms(ExprNode& e, util::Rng& rng, double rate, std::vector<std::string>& swaps) {
    if (e.kind == ExprKind::Number && e.text.find('.') == std::string::npos) {
        if (rng.chance(rate)) {
            e.text += ".0";
            swaps.push_back("decimal");
        }
        return;
    }
    if (e.is_binary("/") && rng.chance(rate)) {
        e.text = "\\frac";
        swaps.push_back("fraction");
    } else if (e.is_unary("\\sqrt") && rng.chance(rate)) {
        e = half_power(std::move(e.children[0]), e.span);
        swaps.push_back("half-power");
        swap_synonyms(e.children[0], rng, rate, swaps);
        return;
    } else if (e.is_binary("") && rng.chance(rate)) {
        e.text = "\\cdot";
        swaps.push_back("cdot");
    }
    for (auto& c : e.children) swap_synonyms(c, rng, rate, swaps);
}

}  // namespace

void validate_rename(const ExprNode& e, const IdentifierMap& rename) {
    const auto ids = mathparse::distinct_identifiers(e);
    validate_names(std::set<std::string>(ids.begin(), ids.end()), rename);
}

PresentationResult apply_presentation(const ExprNode& e, const IdentifierMap& rename, double synonym_rate,
                                      std::uint64_t seed) {
    validate_rename(e, rename);
    PresentationResult out;
    out.formula = mathparse::rename_identifiers(e, rename);
    if (synonym_rate > 0.0) {
        util::Rng rng(seed);
        swap_synonyms(out.formula, rng, synonym_rate, out.swaps);
    }
    return out;
}

IdentifierMap full_rename_map(const Document& doc) {
    static const std::vector<std::string> kGreek = {
        "\\alpha", "\\beta", "\\gamma", "\\delta", "\\epsilon", "\\zeta", "\\eta",     "\\theta",
        "\\iota",  "\\kappa", "\\lambda", "\\mu",  "\\nu",      "\\xi",   "\\rho",     "\\sigma",
        "\\tau",   "\\upsilon", "\\phi",  "\\chi", "\\psi",     "\\omega"};
    std::vector<std::string> pool;
    for (char c = 'a'; c <= 'z'; ++c) pool.emplace_back(1, c);
    for (char c = 'A'; c <= 'Z'; ++c) pool.emplace_back(1, c);
    pool.insert(pool.end(), kGreek.begin(), kGreek.end());
    for (int i = 1; i <= 9; ++i)
        for (char c = 'a'; c <= 'z'; ++c) pool.push_back(std::string(1, c) + "_" + std::to_string(i));

    const auto present = document_identifiers(doc);
    std::vector<std::string> order;
    std::set<std::string> seen;
    for (const auto& run : doc.runs)
        if (run.is_math() && run.tree)
            for (const auto& id : mathparse::identifiers(*run.tree))
                if (seen.insert(id).second) order.push_back(id);

    IdentifierMap out;
    std::size_t next = 0;
    for (const auto& id : order) {
        while (next < pool.size() && present.count(pool[next])) ++next;
        if (next == pool.size()) throw OperatorError("no fresh identifier names left for a full rename");
        out[id] = pool[next++];
    }
    return out;
}

OperatorResult apply_presentation(const Document& doc, const PresentationOptions& opts, std::uint64_t seed) {
    const IdentifierMap rename = opts.full_rename ? full_rename_map(doc) : opts.rename;
    validate_names(document_identifiers(doc), rename);

    std::vector<Edit> edits;
    for (std::size_t k = 0; k < doc.runs.size(); ++k) {
        const auto& run = doc.runs[k];
        if (!run.is_math() || !run.tree) continue;
        if (opts.synonym_rate > 0.0) {
            const auto pr = apply_presentation(*run.tree, rename, opts.synonym_rate, util::mix_seed(seed, k));
            if (!pr.swaps.empty()) {
                std::string entry = "dp:synonym";
                for (const auto& s : pr.swaps) entry += ":" + s;
                edits.push_back({run.span, rerender_run(doc, run, render_u32(pr.formula)), entry});
                continue;
            }
        }
        for (const ExprNode* leaf : mathparse::identifier_leaves(*run.tree)) {
            const auto it = rename.find(leaf->text);
            if (it == rename.end() || it->second == leaf->text) continue;
            edits.push_back({leaf->span, guard_splice(doc.text, leaf->span, u32(it->second)),
                             "dp:rename:" + it->first + "->" + it->second});
        }
    }
    return apply_edits(doc, std::move(edits), ObfuscationOperator::DP, seed);
}

}  // namespace mathreuse::obfuscate
