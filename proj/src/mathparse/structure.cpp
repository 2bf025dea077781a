#include "mathreuse/mathparse/structure.hpp"

#include <set>

namespace mathreuse::mathparse {
namespace {

void collect_maximal(const ExprNode& e, std::vector<ExprNode>& out) {
    if (!contains_relation(e)) {
        out.push_back(e);
        return;
    }
    for (const auto& c : e.children) collect_maximal(c, out);
}

void collect_leaves(const ExprNode& e, std::vector<const ExprNode*>& out) {
    if (e.kind == ExprKind::Identifier) {
        out.push_back(&e);
        return;
    }
    for (const auto& c : e.children) collect_leaves(c, out);
}

bool same_shape(const ExprNode& a, const ExprNode& b) {
    return a.kind == b.kind && a.text == b.text && a.closer == b.closer && a.relators == b.relators &&
           a.has_sub == b.has_sub && a.has_sup == b.has_sup && a.postfix == b.postfix &&
           a.children.size() == b.children.size();
}

bool align(const ExprNode& a, const ExprNode& b, IdentifierMap& fwd, IdentifierMap& back) {
    if (a.kind == ExprKind::Identifier && b.kind == ExprKind::Identifier) {
        const auto f = fwd.find(a.text);
        const auto r = back.find(b.text);
        if (f != fwd.end() || r != back.end()) {
            return f != fwd.end() && r != back.end() && f->second == b.text && r->second == a.text;
        }
        fwd.emplace(a.text, b.text);
        back.emplace(b.text, a.text);
        return true;
    }
    if (!same_shape(a, b)) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!align(a.children[i], b.children[i], fwd, back)) return false;
    return true;
}

}  // namespace

std::vector<ExprNode> maximal_expressions(const ExprNode& formula) {
    std::vector<ExprNode> out;
    collect_maximal(formula, out);
    return out;
}

std::vector<const ExprNode*> identifier_leaves(const ExprNode& formula) {
    std::vector<const ExprNode*> out;
    collect_leaves(formula, out);
    return out;
}

std::vector<std::string> identifiers(const ExprNode& formula) {
    std::vector<std::string> out;
    for (const ExprNode* leaf : identifier_leaves(formula)) out.push_back(leaf->text);
    return out;
}

std::vector<std::string> distinct_identifiers(const ExprNode& formula) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const ExprNode* leaf : identifier_leaves(formula))
        if (seen.insert(leaf->text).second) out.push_back(leaf->text);
    return out;
}

std::optional<IdentifierMap> alpha_equivalent(const ExprNode& e1, const ExprNode& e2) {
    IdentifierMap fwd;
    IdentifierMap back;
    if (!align(e1, e2, fwd, back)) return std::nullopt;
    return fwd;
}

ExprNode rename_identifiers(const ExprNode& e, const IdentifierMap& rename) {
    ExprNode out = e;
    if (out.kind == ExprKind::Identifier) {
        if (const auto it = rename.find(out.text); it != rename.end()) out.text = it->second;
        return out;
    }
    for (auto& c : out.children) c = rename_identifiers(c, rename);
    return out;
}

}  // namespace mathreuse::mathparse
