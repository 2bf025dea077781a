#include "mathreuse/mathparse/expr.hpp"

#include <sstream>

namespace mathreuse::mathparse {

std::string_view to_string(ExprKind kind) {
    switch (kind) {
        case ExprKind::Identifier: return "Identifier";
        case ExprKind::Number: return "Number";
        case ExprKind::Relation: return "Relation";
        case ExprKind::OpApply: return "OpApply";
        case ExprKind::FuncApply: return "FuncApply";
        case ExprKind::Scripted: return "Scripted";
        case ExprKind::Sequence: return "Sequence";
    }
    return "?";
}

ExprNode ExprNode::identifier(std::string name, Interval span) {
    ExprNode n;
    n.kind = ExprKind::Identifier;
    n.text = std::move(name);
    n.span = span;
    return n;
}

ExprNode ExprNode::number(std::string literal, Interval span) {
    ExprNode n;
    n.kind = ExprKind::Number;
    n.text = std::move(literal);
    n.span = span;
    return n;
}

ExprNode ExprNode::op(std::string op, std::vector<ExprNode> children, Interval span) {
    ExprNode n;
    n.kind = ExprKind::OpApply;
    n.text = std::move(op);
    n.children = std::move(children);
    n.span = span;
    return n;
}

ExprNode ExprNode::func(ExprNode head, std::vector<ExprNode> args, Interval span) {
    ExprNode n;
    n.kind = ExprKind::FuncApply;
    n.children.reserve(args.size() + 1);
    n.children.push_back(std::move(head));
    for (auto& a : args) n.children.push_back(std::move(a));
    n.span = span;
    return n;
}

ExprNode ExprNode::relation(std::vector<ExprNode> children, std::vector<std::string> relators, Interval span) {
    ExprNode n;
    n.kind = ExprKind::Relation;
    n.children = std::move(children);
    n.relators = std::move(relators);
    n.relator_spans.assign(n.relators.size(), Interval{});
    n.span = span;
    return n;
}

bool same_tree(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind || a.text != b.text || a.closer != b.closer || a.relators != b.relators ||
        a.has_sub != b.has_sub || a.has_sup != b.has_sup || a.postfix != b.postfix ||
        a.children.size() != b.children.size())
        return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!same_tree(a.children[i], b.children[i])) return false;
    return true;
}

std::size_t node_count(const ExprNode& e) {
    std::size_t n = 1;
    for (const auto& c : e.children) n += node_count(c);
    return n;
}

std::size_t leaf_count(const ExprNode& e) {
    if (e.is_leaf()) return 1;
    std::size_t n = 0;
    for (const auto& c : e.children) n += leaf_count(c);
    return n;
}

std::size_t identifier_leaf_count(const ExprNode& e) {
    if (e.kind == ExprKind::Identifier) return 1;
    std::size_t n = 0;
    for (const auto& c : e.children) n += identifier_leaf_count(c);
    return n;
}

bool contains_relation(const ExprNode& e) {
    if (e.kind == ExprKind::Relation) return true;
    for (const auto& c : e.children)
        if (contains_relation(c)) return true;
    return false;
}

namespace {

void sexpr(const ExprNode& e, std::ostringstream& os) {
    os << '(' << to_string(e.kind);
    switch (e.kind) {
        case ExprKind::Identifier:
        case ExprKind::Number:
            os << ' ' << e.text << ')';
            return;
        case ExprKind::Relation:
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i > 0) os << ' ' << e.relators[i - 1];
                os << ' ';
                sexpr(e.children[i], os);
            }
            os << ')';
            return;
        case ExprKind::OpApply:
            os << ' ' << (e.text.empty() ? "juxt" : e.text);
            if (!e.closer.empty()) os << e.closer;
            if (e.postfix) os << " postfix";
            break;
        case ExprKind::Scripted:
            if (e.has_sub) os << " sub";
            if (e.has_sup) os << " sup";
            break;
        default:
            break;
    }
    for (const auto& c : e.children) {
        os << ' ';
        sexpr(c, os);
    }
    os << ')';
}

}  // namespace

std::string to_sexpr(const ExprNode& e) {
    std::ostringstream os;
    sexpr(e, os);
    return os.str();
}

}  // namespace mathreuse::mathparse
