#include "mathreuse/mathparse/pattern.hpp"

#include <set>

#include "mathreuse/mathparse/parser.hpp"

namespace mathreuse::mathparse {

bool is_metavariable(const ExprNode& e) {
    return e.kind == ExprKind::Identifier && !e.text.empty() && e.text.front() == '?';
}

ExprNode parse_template(std::string_view latex) {
    LexOptions opts;
    opts.templates = true;
    return parse_latex(latex, opts);
}

bool match(const ExprNode& pattern, const ExprNode& subject, Bindings& bindings) {
    if (is_metavariable(pattern)) {
        const auto it = bindings.find(pattern.text);
        if (it != bindings.end()) return same_tree(it->second, subject);
        bindings.emplace(pattern.text, subject);
        return true;
    }
    if (pattern.kind != subject.kind || pattern.text != subject.text || pattern.closer != subject.closer ||
        pattern.relators != subject.relators || pattern.has_sub != subject.has_sub ||
        pattern.has_sup != subject.has_sup || pattern.postfix != subject.postfix ||
        pattern.children.size() != subject.children.size())
        return false;
    for (std::size_t i = 0; i < pattern.children.size(); ++i)
        if (!match(pattern.children[i], subject.children[i], bindings)) return false;
    return true;
}

ExprNode instantiate(const ExprNode& templ, const Bindings& bindings, Interval site) {
    if (is_metavariable(templ)) {
        const auto it = bindings.find(templ.text);
        if (it == bindings.end()) throw std::invalid_argument("unbound metavariable " + templ.text);
        return it->second;
    }
    ExprNode out = templ;
    out.span = site;
    for (auto& s : out.relator_spans) s = site;
    for (auto& c : out.children) c = instantiate(c, bindings, site);
    return out;
}

std::vector<std::string> metavariables(const ExprNode& templ) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    auto walk = [&](auto&& self, const ExprNode& e) -> void {
        if (is_metavariable(e)) {
            if (seen.insert(e.text).second) out.push_back(e.text);
            return;
        }
        for (const auto& c : e.children) self(self, c);
    };
    walk(walk, templ);
    return out;
}

}  // namespace mathreuse::mathparse
