#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mathreuse/util/interval.hpp"

namespace mathreuse::mathparse {

using util::Interval;

enum class ExprKind {
    Identifier,  // text = name ("x", "x_1", "\alpha")
    Number,      // text = literal
    Relation,    // children.size() == relators.size() + 1
    OpApply,     // text = operator; see notes below
    FuncApply,   // children[0] = head, children[1..] = arguments
    Scripted,    // children = base, [sub], [sup] as flagged
    Sequence,    // comma or line separated statements
};

std::string_view to_string(ExprKind kind);

// OpApply conventions:
//   binary   "+", "-", "\pm", "\cdot", "*", "/", "\times", ... and "" for
//            juxtaposition; two children
//   prefix   "-", "+", "\pm", "\neg" with one child
//   postfix  "!" and "'" with one child (`postfix` set)
//   "\frac"  two children; "\sqrt" one child, or two when an index is given
//   delimited groups: text = opener, closer = closer, children = items
//   opaque symbols and unknown macros: text = command, children = brace args
struct ExprNode {
    ExprKind kind = ExprKind::Identifier;
    std::string text;
    std::string closer;
    std::vector<ExprNode> children;
    std::vector<std::string> relators;
    std::vector<Interval> relator_spans;
    bool has_sub = false;
    bool has_sup = false;
    bool postfix = false;
    Interval span{};

    static ExprNode identifier(std::string name, Interval span = {});
    static ExprNode number(std::string literal, Interval span = {});
    static ExprNode op(std::string op, std::vector<ExprNode> children, Interval span = {});
    static ExprNode func(ExprNode head, std::vector<ExprNode> args, Interval span = {});
    static ExprNode relation(std::vector<ExprNode> children, std::vector<std::string> relators, Interval span = {});

    bool is_leaf() const { return kind == ExprKind::Identifier || kind == ExprKind::Number; }
    bool is_binary(std::string_view op) const {
        return kind == ExprKind::OpApply && !postfix && closer.empty() && children.size() == 2 && text == op;
    }
    bool is_unary(std::string_view op) const {
        return kind == ExprKind::OpApply && !postfix && closer.empty() && children.size() == 1 && text == op;
    }

    const ExprNode* sub() const { return has_sub ? &children[1] : nullptr; }
    const ExprNode* sup() const { return has_sup ? &children[has_sub ? 2 : 1] : nullptr; }
};

// Structural equality; spans are ignored.
bool same_tree(const ExprNode& a, const ExprNode& b);

// Number of nodes, of Identifier/Number leaves, and of Identifier leaves.
std::size_t node_count(const ExprNode& e);
std::size_t leaf_count(const ExprNode& e);
std::size_t identifier_leaf_count(const ExprNode& e);
bool contains_relation(const ExprNode& e);

// Parenthesized s-expression used by the CLI and in test diagnostics.
std::string to_sexpr(const ExprNode& e);

}  // namespace mathreuse::mathparse
