#include <cmath>
#include <set>

#include "math_sites.hpp"
#include "mathreuse/mathparse/evaluate.hpp"
#include "mathreuse/obfuscate/operators.hpp"
#include "mathreuse/util/rng.hpp"
#include "rewrite.hpp"

namespace mathreuse::obfuscate {

using mathparse::ExprKind;
using namespace detail;

namespace {

// Value of an expression, or the adjacent differences of a relation.
std::vector<double> signature(const ExprNode& e, const mathparse::Assignment& a) {
    if (e.kind != ExprKind::Relation) return {mathparse::evaluate(e, a)};
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < e.children.size(); ++i)
        out.push_back(mathparse::evaluate(e.children[i], a) - mathparse::evaluate(e.children[i + 1], a));
    return out;
}

bool close(double a, double b) {
    return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

std::optional<bool> numerically_equivalent(const ExprNode& before, const ExprNode& after, double residual_scale,
                                           std::uint64_t seed, int samples) {
    std::set<std::string> names;
    for (const auto& id : mathparse::identifiers(before)) names.insert(id);
    for (const auto& id : mathparse::identifiers(after)) names.insert(id);
    util::Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        mathparse::Assignment a;
        for (const auto& n : names) a[n] = rng.uniform(0.5, 2.0);
        std::vector<double> x;
        std::vector<double> y;
        try {
            x = signature(before, a);
            y = signature(after, a);
        } catch (const mathparse::NotEvaluable&) {
            return std::nullopt;
        }
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!close(residual_scale * x[i], y[i])) return false;
    }
    return true;
}

FmResult apply_formula_manipulation(const ExprNode& expr, const RuleLibrary& rules, int steps, std::uint64_t seed) {
    util::Rng rng(seed);
    FmResult res;
    res.expr = expr;
    for (int s = 0; s < steps; ++s) {
        auto sites = rule_sites(res.expr, rules);
        bool applied = false;
        while (!sites.empty() && !applied) {
            const std::size_t idx = rng.below(sites.size());
            const RuleSite site = sites[idx];
            sites.erase(sites.begin() + static_cast<std::ptrdiff_t>(idx));
            const auto& rule = rules.rules[site.rule];
            const ExprNode& node = node_at(res.expr, site.path);
            ExprNode repl = rewrite_at(res.expr, site, rules);
            if (mathparse::same_tree(repl, node)) continue;
            if (rule.numerically_checkable()) {
                const auto ok = numerically_equivalent(node, repl, rule.residual_scale, rng.next());
                if (ok && !*ok) continue;
            }
            ExprNode next = res.expr;
            node_at(next, site.path) = std::move(repl);
            res.derivation.push_back({rule.name, res.expr, next});
            res.expr = std::move(next);
            applied = true;
        }
        if (!applied) break;
    }
    return res;
}

OperatorResult apply_formula_manipulation(const Document& doc, const RuleLibrary& rules, int steps,
                                          std::uint64_t seed) {
    std::vector<Edit> edits;
    for (std::size_t k = 0; k < doc.runs.size(); ++k) {
        const auto& run = doc.runs[k];
        if (!run.is_math() || !run.tree) continue;
        const auto r = apply_formula_manipulation(*run.tree, rules, steps, util::mix_seed(seed, k));
        if (r.derivation.empty()) continue;
        std::string entry = "fm";
        for (const auto& st : r.derivation) entry += ":" + st.rule;
        edits.push_back({run.span, rerender_run(doc, run, render_u32(r.expr)), entry});
    }
    return apply_edits(doc, std::move(edits), ObfuscationOperator::FM, seed);
}

}  // namespace mathreuse::obfuscate
