#include <algorithm>
#include <set>

#include "math_sites.hpp"
#include "mathreuse/mathparse/render.hpp"
#include "mathreuse/obfuscate/operators.hpp"
#include "mathreuse/util/rng.hpp"
#include "mathreuse/util/utf8.hpp"
#include "text_match.hpp"

namespace mathreuse::obfuscate {

using mathparse::ExprKind;
using namespace detail;

namespace {

// Operands eligible for substitution, as child indices of a relation root,
// or {npos} for a relation-free root.
constexpr std::size_t kRoot = static_cast<std::size_t>(-1);

std::vector<std::size_t> eligible(const ExprNode& f) {
    std::vector<std::size_t> out;
    if (f.kind == ExprKind::Relation) {
        for (std::size_t i = 0; i < f.children.size(); ++i)
            if (mathparse::leaf_count(f.children[i]) >= 2) out.push_back(i);
    } else if (f.kind != ExprKind::Sequence && !mathparse::contains_relation(f) && mathparse::leaf_count(f) >= 2) {
        out.push_back(kRoot);
    }
    return out;
}

struct Applied {
    SubstitutionResult result;
    std::vector<std::size_t> sites;
};

Applied substitute(const ExprNode& formula, const SubstitutionPolicy& policy, std::uint64_t seed) {
    const auto cands = eligible(formula);
    if (cands.empty()) throw OperatorError("no maximal expression with two or more leaves");
    util::Rng rng(seed);
    std::vector<std::size_t> chosen;
    for (std::size_t c : cands)
        if (rng.chance(policy.rate)) chosen.push_back(c);
    if (chosen.empty()) chosen.push_back(cands[rng.below(cands.size())]);

    std::set<std::string> used;
    for (const auto& id : mathparse::distinct_identifiers(formula)) used.insert(id);
    std::size_t next = 0;
    auto fresh = [&]() {
        while (next < policy.alphabet.size()) {
            std::string name(1, policy.alphabet[next++]);
            if (used.insert(name).second) return name;
        }
        throw OperatorError("fresh substitution names exhausted");
    };

    Applied out;
    out.result.formula = formula;
    out.sites = chosen;
    for (std::size_t c : chosen) {
        ExprNode& target = c == kRoot ? out.result.formula : out.result.formula.children[c];
        std::vector<ExprNode> args;
        for (const auto& id : mathparse::distinct_identifiers(target)) args.push_back(ExprNode::identifier(id, target.span));
        ExprNode name = ExprNode::identifier(fresh(), target.span);
        ExprNode head = args.empty() ? std::move(name) : ExprNode::func(std::move(name), std::move(args), target.span);
        out.result.clauses.push_back({head, target});
        target = std::move(head);
    }
    return out;
}

bool generated_head_shape(const std::string& name) {
    return name.size() == 1 && name[0] >= 'A' && name[0] <= 'Z';
}

struct Resolver {
    std::map<std::string, const SubstitutionClause*> defs;
    std::vector<std::string> stack;

    ExprNode expand(const ExprNode& e) {
        const SubstitutionClause* c = nullptr;
        std::string name;
        std::vector<const ExprNode*> args;
        if (e.kind == ExprKind::FuncApply && e.children[0].kind == ExprKind::Identifier) {
            name = e.children[0].text;
            const auto it = defs.find(name);
            if (it == defs.end()) {
                if (generated_head_shape(name)) throw OperatorError("no clause defines " + name);
            } else {
                c = it->second;
                for (std::size_t i = 1; i < e.children.size(); ++i) args.push_back(&e.children[i]);
            }
        } else if (e.kind == ExprKind::Identifier) {
            const auto it = defs.find(e.text);
            if (it != defs.end() && it->second->head.kind == ExprKind::Identifier) {
                name = e.text;
                c = it->second;
            }
        }
        if (!c) {
            ExprNode out = e;
            for (auto& ch : out.children) ch = expand(ch);
            return out;
        }
        if (std::find(stack.begin(), stack.end(), name) != stack.end())
            throw OperatorError("cyclic substitution through " + name);
        ExprNode body = c->body;
        if (c->head.kind == ExprKind::FuncApply) {
            if (c->head.children.size() != args.size() + 1)
                throw OperatorError("wrong number of arguments for " + name);
            std::map<std::string, const ExprNode*> params;
            for (std::size_t i = 0; i < args.size(); ++i) {
                const ExprNode& p = c->head.children[i + 1];
                if (p.kind != ExprKind::Identifier) throw OperatorError("clause parameter of " + name + " is not a name");
                params[p.text] = args[i];
            }
            body = bind(body, params);
        }
        stack.push_back(name);
        ExprNode out = expand(body);
        stack.pop_back();
        return out;
    }

    static ExprNode bind(const ExprNode& e, const std::map<std::string, const ExprNode*>& params) {
        if (e.kind == ExprKind::Identifier) {
            const auto it = params.find(e.text);
            return it == params.end() ? e : *it->second;
        }
        ExprNode out = e;
        for (auto& c : out.children) c = bind(c, params);
        return out;
    }
};

std::u32string join_clauses(const std::vector<std::u32string>& parts) {
    std::u32string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += i + 1 == parts.size() ? U" and " : U", ";
        out += parts[i];
    }
    return out;
}

}  // namespace

SubstitutionResult apply_substitution(const ExprNode& formula, const SubstitutionPolicy& policy, std::uint64_t seed) {
    return substitute(formula, policy, seed).result;
}

ExprNode resolve_substitutions(const ExprNode& formula, const std::vector<SubstitutionClause>& clauses) {
    Resolver r;
    for (const auto& c : clauses) {
        const ExprNode& h = c.head.kind == ExprKind::FuncApply ? c.head.children[0] : c.head;
        if (h.kind != ExprKind::Identifier) throw OperatorError("clause head is not a name");
        if (!r.defs.emplace(h.text, &c).second) throw OperatorError("duplicate clause for " + h.text);
    }
    return r.expand(formula);
}

OperatorResult apply_substitution(const Document& doc, const SubstitutionPolicy& policy, std::uint64_t seed) {
    util::Rng rng(seed);
    std::vector<std::size_t> runs;
    for (std::size_t k = 0; k < doc.runs.size(); ++k)
        if (doc.runs[k].is_math() && doc.runs[k].tree && !eligible(*doc.runs[k].tree).empty()) runs.push_back(k);
    if (runs.empty()) return apply_edits(doc, {}, ObfuscationOperator::S, seed);

    const auto& run = doc.runs[runs[rng.below(runs.size())]];
    const ExprNode& tree = *run.tree;
    const Applied a = substitute(tree, policy, rng.next());
    const auto mask = text_mask(doc);
    const std::u32string& t = doc.text;

    // Body with the chosen operands replaced by their heads.
    std::u32string body = t.substr(tree.span.start, tree.span.length());
    std::vector<std::u32string> defs;
    for (std::size_t i = a.sites.size(); i-- > 0;) {
        const ExprNode& orig = a.sites[i] == kRoot ? tree : tree.children[a.sites[i]];
        const ExprNode& head = a.result.clauses[i].head;
        body.replace(orig.span.start - tree.span.start, orig.span.length(), render_u32(head));
    }
    for (std::size_t i = 0; i < a.sites.size(); ++i) {
        const ExprNode& orig = a.sites[i] == kRoot ? tree : tree.children[a.sites[i]];
        defs.push_back(U"$" + render_u32(a.result.clauses[i].head) + U"=" + t.substr(orig.span.start, orig.span.length()) +
                       U"$");
    }

    Interval site = run.span;
    std::optional<char32_t> end_punct = trailing_punct(doc, run);
    std::u32string tail = t.substr(tree.span.end, run.body.end - tree.span.end);
    if (end_punct) tail.clear();
    if (!end_punct && site.end < t.size() && mask[site.end] && is_sentence_punct(t[site.end])) {
        end_punct = t[site.end];
        ++site.end;
    }
    if (!end_punct) {
        std::size_t i = site.end;
        while (i < t.size() && util::is_space(t[i]) && t[i] != U'\n') ++i;
        const bool closes = i == t.size() || t[i] == U'\n';
        end_punct = closes ? U'.' : U',';
    }

    std::u32string repl = t.substr(run.span.start, tree.span.start - run.span.start);
    repl += body + tail + U",";
    repl += t.substr(run.body.end, run.span.end - run.body.end);
    repl += U" where " + join_clauses(defs);
    repl.push_back(*end_punct);
    return apply_edits(doc, {{site, repl, "substitution"}}, ObfuscationOperator::S, seed);
}

}  // namespace mathreuse::obfuscate
