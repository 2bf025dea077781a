#include "mathreuse/mathparse/render.hpp"

#include "lexicon_tables.hpp"
#include "mathreuse/util/utf8.hpp"

namespace mathreuse::mathparse {
namespace {

// Binding strength of the construct at the top of a node.
enum Prec : int {
    kSequence = 0,
    kRelation = 1,
    kAdditive = 2,
    kPrefix = 3,
    kProduct = 4,
    kPostfix = 5,
    kAtom = 6,
};

bool is_binary_op(const ExprNode& e) {
    return e.kind == ExprKind::OpApply && !e.postfix && e.closer.empty() && e.children.size() == 2 &&
           (e.text.empty() || tables::is_additive(e.text) || tables::is_multiplicative(e.text));
}

bool is_prefix_op(const ExprNode& e) {
    return e.kind == ExprKind::OpApply && !e.postfix && e.closer.empty() && e.children.size() == 1 &&
           tables::is_prefix(e.text);
}

int precedence(const ExprNode& e) {
    switch (e.kind) {
        case ExprKind::Sequence: return kSequence;
        case ExprKind::Relation: return kRelation;
        case ExprKind::OpApply:
            if (is_binary_op(e)) return tables::is_additive(e.text) ? kAdditive : kProduct;
            if (is_prefix_op(e)) return kPrefix;
            if (e.postfix) return kPostfix;
            return kAtom;
        default:
            return kAtom;
    }
}

// Appends pieces, inserting a space only where concatenation would merge
// two lexemes (\alpha x, 2 3, ?a b).
class Builder {
public:
    void put(std::string_view piece) {
        if (piece.empty()) return;
        if (needs_space(piece.front())) out_.push_back(' ');
        out_.append(piece);
    }
    std::string take() { return std::move(out_); }

private:
    static bool alnum(char c) { return util::is_ascii_letter(static_cast<unsigned char>(c)) || util::is_ascii_digit(static_cast<unsigned char>(c)); }

    bool needs_space(char next) const {
        if (out_.empty()) return false;
        const char last = out_.back();
        if (util::is_ascii_digit(static_cast<unsigned char>(last)) && util::is_ascii_digit(static_cast<unsigned char>(next)))
            return true;
        if (!alnum(last) || !alnum(next)) return false;
        std::size_t i = out_.size();
        while (i > 0 && alnum(out_[i - 1])) --i;
        if (i == 0) return false;
        if (out_[i - 1] == '?') return true;
        if (out_[i - 1] == '\\') {
            for (std::size_t k = i; k < out_.size(); ++k)
                if (!util::is_ascii_letter(static_cast<unsigned char>(out_[k]))) return false;
            return util::is_ascii_letter(static_cast<unsigned char>(next));
        }
        return false;
    }

    std::string out_;
};

struct Rendered {
    std::string text;
    bool ends_ident = false;  // a following "(" would be read as a call
};

std::string concat(std::initializer_list<std::string_view> parts) {
    Builder b;
    for (auto p : parts) b.put(p);
    return b.take();
}

Rendered render(const ExprNode& e, int min_prec, bool lead);

// Renders `e` wrapped in parentheses when its precedence is below min_prec.
// `lead` is set when the output directly follows something a "(" would turn
// into a function call; \left( \right) is used there instead.
Rendered operand(const ExprNode& e, int min_prec, bool lead) {
    if (precedence(e) >= min_prec) return render(e, min_prec, lead);
    const Rendered inner = render(e, kSequence, false);
    if (e.kind == ExprKind::Sequence) return {"{" + inner.text + "}", false};
    return {concat({lead ? "\\left(" : "(", inner.text, lead ? "\\right)" : ")"}), false};
}

bool right_operand_ok(const ExprNode& e) {
    if (precedence(e) >= kPostfix) return true;
    return is_prefix_op(e) && right_operand_ok(e.children[0]);
}

std::string script_text(const ExprNode& s) {
    if (s.kind == ExprKind::OpApply && s.children.empty() && s.closer.empty() &&
        (s.text == "*" || s.text == "+" || s.text == "-" || s.text == "'"))
        return s.text;
    const Rendered r = render(s, kSequence, false);
    const bool single = (s.kind == ExprKind::Identifier || s.kind == ExprKind::Number) &&
                        util::decode_utf8(r.text).size() == 1;
    return single ? r.text : "{" + r.text + "}";
}

std::string join_items(const std::vector<ExprNode>& items, std::size_t from = 0) {
    std::string out;
    for (std::size_t i = from; i < items.size(); ++i) {
        if (i > from) out += ",";
        out += operand(items[i], kRelation, false).text;
    }
    return out;
}

Rendered render(const ExprNode& e, int /*min_prec*/, bool lead) {
    switch (e.kind) {
        case ExprKind::Identifier: {
            // Folded subscripts longer than one character need their braces back.
            const auto us = e.text.find('_');
            if (us != std::string::npos && us + 1 < e.text.size() && e.text[us + 1] != '{' &&
                util::decode_utf8(std::string_view(e.text).substr(us + 1)).size() > 1)
                return {e.text.substr(0, us) + "_{" + e.text.substr(us + 1) + "}", true};
            return {e.text, true};
        }
        case ExprKind::Number:
            return {e.text, false};
        case ExprKind::Sequence: {
            Builder b;
            bool ends = false;
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i > 0) b.put(",");
                const Rendered r = operand(e.children[i], kRelation, i == 0 && lead);
                b.put(r.text);
                ends = r.ends_ident;
            }
            return {b.take(), ends};
        }
        case ExprKind::Relation: {
            Builder b;
            bool ends = false;
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i > 0) b.put(e.relators[i - 1]);
                const Rendered r = operand(e.children[i], kAdditive, i == 0 && lead);
                b.put(r.text);
                ends = r.ends_ident;
            }
            return {b.take(), ends};
        }
        case ExprKind::FuncApply: {
            const Rendered head = operand(e.children[0], kPostfix, lead);
            return {concat({head.text, "(" + join_items(e.children, 1) + ")"}), false};
        }
        case ExprKind::Scripted: {
            const ExprNode& base = e.children[0];
            Rendered b = base.kind == ExprKind::Scripted ? Rendered{concat({lead ? "\\left(" : "(", render(base, kSequence, false).text, lead ? "\\right)" : ")"}), false}
                                                         : operand(base, kAtom, lead);
            Builder out;
            out.put(b.text);
            if (const ExprNode* s = e.sub()) out.put("_" + script_text(*s));
            if (const ExprNode* s = e.sup()) out.put("^" + script_text(*s));
            return {out.take(), false};
        }
        case ExprKind::OpApply:
            break;
    }

    // OpApply
    if (is_binary_op(e)) {
        const bool additive = tables::is_additive(e.text);
        const int left_min = additive ? kAdditive : kProduct;
        const Rendered left = operand(e.children[0], left_min, lead);
        Rendered right;
        if (additive) {
            right = operand(e.children[1], kPrefix, false);
        } else if (e.text.empty()) {
            const bool follow = left.ends_ident;
            right = precedence(e.children[1]) >= kPostfix ? render(e.children[1], kPostfix, follow)
                                                          : operand(e.children[1], kPostfix, follow);
        } else {
            right = right_operand_ok(e.children[1]) ? render(e.children[1], kPostfix, false)
                                                    : operand(e.children[1], kAtom, false);
        }
        return {concat({left.text, e.text, right.text}), right.ends_ident};
    }
    if (is_prefix_op(e)) {
        const Rendered inner = operand(e.children[0], kPrefix, false);
        return {concat({e.text, inner.text}), inner.ends_ident};
    }
    if (e.postfix) {
        const Rendered inner = operand(e.children[0], kAtom, lead);
        return {concat({inner.text, e.text}), e.text == "'"};
    }
    if (!e.closer.empty()) {
        std::string open = e.text;
        std::string close = e.closer;
        if (lead && open == "(") {
            open = "\\left(";
            close = "\\right" + close;
        }
        if (e.children.size() == 1 && (open == "|" || open == "\\|" || open == "‖")) {
            return {concat({open, render(e.children[0], kRelation, false).text, close}), false};
        }
        return {concat({open, join_items(e.children), close}), false};
    }
    if (e.text == "\\frac" || e.text == "\\binom") {
        return {concat({e.text, "{" + render(e.children[0], kSequence, false).text + "}",
                        "{" + render(e.children[1], kSequence, false).text + "}"}),
                false};
    }
    if (e.text == "\\sqrt") {
        std::string idx;
        if (e.children.size() == 2) idx = "[" + render(e.children[1], kRelation, false).text + "]";
        return {concat({e.text + idx, "{" + render(e.children[0], kSequence, false).text + "}"}), false};
    }
    // opaque symbol or macro with brace arguments
    Builder b;
    b.put(e.text);
    for (const auto& c : e.children) b.put("{" + render(c, kSequence, false).text + "}");
    const bool fn = e.children.empty() && tables::is_function_name(e.text);
    return {b.take(), fn};
}

}  // namespace

std::string render_latex(const ExprNode& e) { return render(e, kSequence, false).text; }

}  // namespace mathreuse::mathparse
