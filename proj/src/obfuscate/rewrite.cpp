#include "rewrite.hpp"

#include <charconv>

#include "mathreuse/mathparse/pattern.hpp"

namespace mathreuse::obfuscate::detail {

using mathparse::ExprKind;

namespace {

void collect(const ExprNode& e, const RuleLibrary& rules, Path& path, std::vector<RuleSite>& out,
             std::vector<std::vector<RuleSite>>& per_rule) {
    for (std::size_t r = 0; r < rules.rules.size(); ++r) {
        const auto& rule = rules.rules[r];
        if (rule.scope == RuleScope::Relation && e.kind != ExprKind::Relation) continue;
        mathparse::Bindings b;
        if (mathparse::match(rule.pattern, e, b)) per_rule[r].push_back({r, path});
    }
    for (std::size_t i = 0; i < e.children.size(); ++i) {
        path.push_back(i);
        collect(e.children[i], rules, path, out, per_rule);
        path.pop_back();
    }
}

bool integer_literal(const ExprNode& e, long long& v) {
    if (e.kind != ExprKind::Number || e.text.find('.') != std::string::npos || e.text.size() > 15) return false;
    const auto r = std::from_chars(e.text.data(), e.text.data() + e.text.size(), v);
    return r.ec == std::errc() && r.ptr == e.text.data() + e.text.size();
}

struct Term {
    bool negative;
    ExprNode node;
};

void flatten(const ExprNode& e, bool negative, std::vector<Term>& out) {
    if (e.is_binary("+") || e.is_binary("-")) {
        flatten(e.children[0], negative, out);
        flatten(e.children[1], e.text == "-" ? !negative : negative, out);
        return;
    }
    out.push_back({negative, e});
}

}  // namespace

std::vector<RuleSite> rule_sites(const ExprNode& e, const RuleLibrary& rules) {
    std::vector<std::vector<RuleSite>> per_rule(rules.rules.size());
    std::vector<RuleSite> out;
    Path path;
    collect(e, rules, path, out, per_rule);
    for (auto& v : per_rule) out.insert(out.end(), v.begin(), v.end());
    return out;
}

const ExprNode& node_at(const ExprNode& root, const Path& p) {
    const ExprNode* n = &root;
    for (std::size_t i : p) n = &n->children[i];
    return *n;
}

ExprNode& node_at(ExprNode& root, const Path& p) {
    ExprNode* n = &root;
    for (std::size_t i : p) n = &n->children[i];
    return *n;
}

ExprNode rewrite_at(const ExprNode& root, const RuleSite& site, const RuleLibrary& rules) {
    const auto& rule = rules.rules[site.rule];
    const ExprNode& node = node_at(root, site.path);
    mathparse::Bindings b;
    mathparse::match(rule.pattern, node, b);
    ExprNode out = mathparse::instantiate(rule.replacement, b, node.span);
    return rule.fold_constants ? fold_constants(out) : out;
}

ExprNode fold_constants(const ExprNode& e) {
    ExprNode out = e;
    for (auto& c : out.children) c = fold_constants(c);
    if (!out.is_binary("+") && !out.is_binary("-")) return out;

    std::vector<Term> terms;
    flatten(out, false, terms);
    long long constant = 0;
    std::size_t numeric = 0;
    std::vector<Term> rest;
    for (auto& t : terms) {
        long long v = 0;
        if (integer_literal(t.node, v)) {
            constant += t.negative ? -v : v;
            ++numeric;
        } else {
            rest.push_back(std::move(t));
        }
    }
    if (numeric < 2) return out;

    const util::Interval site = out.span;
    auto number = [&](long long v) { return ExprNode::number(std::to_string(v), site); };
    if (rest.empty()) {
        return constant < 0 ? ExprNode::op("-", {number(-constant)}, site) : number(constant);
    }
    ExprNode acc = rest[0].negative ? ExprNode::op("-", {rest[0].node}, site) : rest[0].node;
    for (std::size_t i = 1; i < rest.size(); ++i)
        acc = ExprNode::op(rest[i].negative ? "-" : "+", {std::move(acc), rest[i].node}, site);
    if (constant > 0) acc = ExprNode::op("+", {std::move(acc), number(constant)}, site);
    if (constant < 0) acc = ExprNode::op("-", {std::move(acc), number(-constant)}, site);
    return acc;
}

}  // namespace mathreuse::obfuscate::detail
