#include "mathreuse/mathparse/parser.hpp"

#include <algorithm>
#include <optional>

#include "lexicon_tables.hpp"
#include "mathreuse/util/utf8.hpp"

namespace mathreuse::mathparse {
namespace {

std::string canonical_operator(const std::string& lexeme) {
    if (lexeme == "−") return "-";
    if (lexeme == "·") return "\\cdot";
    if (lexeme == "×") return "\\times";
    if (lexeme == "±") return "\\pm";
    if (lexeme == "\\dfrac" || lexeme == "\\tfrac" || lexeme == "\\cfrac") return "\\frac";
    return lexeme;
}

bool is_trailing_punct(const MathToken& t) {
    return t.kind == TokenKind::Operator && (t.text == "." || t.text == "," || t.text == ";");
}

bool is_abs_bar(const MathToken& t) { return t.kind == TokenKind::Operator && t.text == "|"; }
bool is_norm_bar(const MathToken& t) {
    return t.kind == TokenKind::Operator && (t.text == "\\|" || t.text == "‖");
}

class Parser {
public:
    explicit Parser(std::span<const MathToken> toks) : toks_(toks) {}

    ExprNode parse() {
        skip();
        if (at_end()) throw ParseError(toks_.empty() ? 0 : toks_.back().end(), "empty formula");
        const std::size_t start = here();
        std::vector<ExprNode> items;
        items.push_back(parse_relation());
        while (true) {
            skip();
            if (at_end()) break;
            const MathToken& t = peek();
            const bool separator = is_trailing_punct(t) || is_line_break(t);
            if (!separator) throw ParseError(t.offset, "unexpected '" + t.text + "'");
            advance();
            skip();
            if (at_end()) break;
            if (is_trailing_punct(peek()) && rest_is_punct()) {
                while (!at_end()) {
                    advance();
                    skip();
                }
                break;
            }
            items.push_back(parse_relation());
        }
        if (items.size() == 1) return std::move(items.front());
        ExprNode seq;
        seq.kind = ExprKind::Sequence;
        seq.children = std::move(items);
        seq.span = {start, last_end_};
        return seq;
    }

private:
    bool at_end() const { return pos_ >= toks_.size(); }
    const MathToken& peek() const { return toks_[pos_]; }
    const MathToken* raw_next() const { return at_end() ? nullptr : &toks_[pos_]; }
    std::size_t here() const { return at_end() ? last_end_ : toks_[pos_].offset; }

    const MathToken& advance() {
        const MathToken& t = toks_[pos_++];
        last_end_ = t.end();
        return t;
    }

    static bool is_line_break(const MathToken& t) {
        return t.kind == TokenKind::Command && t.text == "\\\\";
    }

    bool ignorable(const MathToken& t) const {
        if (t.kind == TokenKind::Operator && t.text == "&") return true;
        return t.kind == TokenKind::Command && tables::is_ignorable(t.text);
    }

    // Skips spacing/sizing macros, alignment marks, \label{..} and \tag{..}.
    // Skipped tokens never extend spans, so last_end_ is left alone.
    void skip() {
        while (!at_end() && ignorable(peek())) {
            const MathToken& t = toks_[pos_++];
            if (t.text == "\\label" || t.text == "\\tag") {
                if (!at_end() && peek().kind == TokenKind::OpenGroup && peek().text == "{") skip_group();
            } else if (t.text == "\\left" || t.text == "\\right" || t.text == "\\middle") {
                if (!at_end() && peek().kind == TokenKind::Operator && peek().text == ".") ++pos_;
            }
        }
    }

    void skip_group() {
        int depth = 0;
        do {
            const MathToken& t = toks_[pos_++];
            if (t.kind == TokenKind::OpenGroup) ++depth;
            if (t.kind == TokenKind::CloseGroup) --depth;
        } while (depth > 0 && !at_end());
    }

    bool rest_is_punct() {
        std::size_t p = pos_;
        for (; p < toks_.size(); ++p) {
            const auto& t = toks_[p];
            if (ignorable(t) || is_trailing_punct(t) || is_line_break(t)) continue;
            return false;
        }
        return true;
    }

    bool at_relation() {
        skip();
        if (at_end()) return false;
        const MathToken& t = peek();
        if (t.kind == TokenKind::Relation) return true;
        if (t.kind == TokenKind::Command && t.text == "\\not" && pos_ + 1 < toks_.size() &&
            toks_[pos_ + 1].kind == TokenKind::Relation)
            return true;
        // a line break followed by a relator continues an aligned chain
        if (is_line_break(t)) {
            std::size_t p = pos_ + 1;
            while (p < toks_.size() && ignorable(toks_[p])) ++p;
            return p < toks_.size() && toks_[p].kind == TokenKind::Relation;
        }
        return false;
    }

    ExprNode parse_relation() {
        skip();
        const std::size_t start = here();
        ExprNode first = parse_additive();
        if (!at_relation()) return first;
        std::vector<ExprNode> children;
        std::vector<std::string> relators;
        std::vector<Interval> relator_spans;
        children.push_back(std::move(first));
        while (at_relation()) {
            if (is_line_break(peek())) {
                advance();
                skip();
            }
            const MathToken& r = advance();
            std::string lexeme = r.text;
            Interval rspan{r.offset, r.end()};
            if (r.kind == TokenKind::Command) {  // \not followed by a relation
                const MathToken& r2 = advance();
                lexeme += r2.text;
                rspan.end = r2.end();
            }
            skip();
            if (at_end() || !starts_operand(peek()))
                throw ParseError(rspan.start, "dangling relator '" + lexeme + "'");
            relators.push_back(std::move(lexeme));
            relator_spans.push_back(rspan);
            children.push_back(parse_additive());
        }
        ExprNode rel = ExprNode::relation(std::move(children), std::move(relators), {start, last_end_});
        rel.relator_spans = std::move(relator_spans);
        return rel;
    }

    bool starts_operand(const MathToken& t) const {
        if (t.kind == TokenKind::Operator && tables::is_prefix(canonical_operator(t.text))) return true;
        return starts_factor(t);
    }

    ExprNode parse_additive() {
        skip();
        const std::size_t start = here();
        ExprNode node = parse_signed();
        while (true) {
            skip();
            if (at_end()) break;
            const MathToken& t = peek();
            if (t.kind != TokenKind::Operator) break;
            const std::string op = canonical_operator(t.text);
            if (!tables::is_additive(op)) break;
            advance();
            skip();
            if (at_end() || !starts_operand(peek())) throw ParseError(t.offset, "dangling operator '" + t.text + "'");
            ExprNode rhs = parse_signed();
            node = ExprNode::op(op, {std::move(node), std::move(rhs)}, {start, last_end_});
        }
        return node;
    }

    ExprNode parse_signed() {
        skip();
        if (at_end()) throw ParseError(last_end_, "expected an operand");
        const MathToken& t = peek();
        if (t.kind == TokenKind::Operator) {
            const std::string op = canonical_operator(t.text);
            if (tables::is_prefix(op)) {
                const std::size_t start = t.offset;
                advance();
                skip();
                if (at_end() || !starts_operand(peek()))
                    throw ParseError(t.offset, "dangling operator '" + t.text + "'");
                ExprNode operand = parse_signed();
                return ExprNode::op(op, {std::move(operand)}, {start, last_end_});
            }
        }
        return parse_product();
    }

    bool starts_factor(const MathToken& t) const {
        switch (t.kind) {
            case TokenKind::Identifier:
            case TokenKind::Number:
                return true;
            case TokenKind::OpenGroup:
                return true;
            case TokenKind::Command:
                return !is_line_break(t) && !tables::is_ignorable(t.text) && t.text != "\\not";
            case TokenKind::Operator:
                if (is_abs_bar(t)) return abs_depth_ == 0;
                if (is_norm_bar(t)) return norm_depth_ == 0;
                return false;
            default:
                return false;
        }
    }

    ExprNode parse_product() {
        skip();
        const std::size_t start = here();
        ExprNode node = parse_postfix();
        while (true) {
            skip();
            if (at_end()) break;
            const MathToken& t = peek();
            if (t.kind == TokenKind::Operator) {
                const std::string op = canonical_operator(t.text);
                if (tables::is_multiplicative(op)) {
                    advance();
                    skip();
                    if (at_end() || !starts_operand(peek()))
                        throw ParseError(t.offset, "dangling operator '" + t.text + "'");
                    ExprNode rhs = parse_signed_factor();
                    node = ExprNode::op(op, {std::move(node), std::move(rhs)}, {start, last_end_});
                    continue;
                }
            }
            if (!starts_factor(t)) break;
            ExprNode rhs = parse_postfix();
            node = ExprNode::op("", {std::move(node), std::move(rhs)}, {start, last_end_});
        }
        return node;
    }

    // Operand after an explicit multiplicative operator: a sign binds to the
    // following factor only (a \cdot -b).
    ExprNode parse_signed_factor() {
        const MathToken& t = peek();
        if (t.kind == TokenKind::Operator && tables::is_prefix(canonical_operator(t.text))) {
            const std::size_t start = t.offset;
            const std::string op = canonical_operator(advance().text);
            skip();
            if (at_end()) throw ParseError(t.offset, "dangling operator '" + t.text + "'");
            ExprNode operand = parse_signed_factor();
            return ExprNode::op(op, {std::move(operand)}, {start, last_end_});
        }
        return parse_postfix();
    }

    ExprNode parse_postfix() {
        skip();
        const std::size_t start = here();
        ExprNode node = parse_scripted();
        while (true) {
            const MathToken* t = raw_next();
            if (!t || t->kind != TokenKind::Operator || (t->text != "!" && t->text != "'")) break;
            advance();
            ExprNode p = ExprNode::op(t->text, {std::move(node)}, {start, last_end_});
            p.postfix = true;
            node = std::move(p);
            const MathToken* n = raw_next();
            if (t->text == "'" && n && n->kind == TokenKind::OpenGroup && n->text == "(")
                node = parse_call(std::move(node), start);
        }
        return node;
    }

    struct Script {
        ExprNode node;
        std::string lexeme;  // for folding into identifier names
        bool single_token = false;
        std::size_t end = 0;
    };

    Script parse_script_arg() {
        skip();
        if (at_end()) throw ParseError(last_end_, "missing script argument");
        const MathToken& t = peek();
        const std::size_t first = pos_;
        if (t.kind == TokenKind::OpenGroup && t.text == "{") {
            advance();
            ExprNode inner = parse_group_body("}");
            std::string lexeme = "{";
            for (std::size_t p = first + 1; p + 1 < pos_; ++p) lexeme += toks_[p].text;
            lexeme += "}";
            const bool single = pos_ - first == 3;
            if (single) lexeme = toks_[first + 1].text;
            return {std::move(inner), lexeme, single, last_end_};
        }
        if (t.kind == TokenKind::Identifier || t.kind == TokenKind::Number) {
            advance();
            ExprNode leaf = t.kind == TokenKind::Identifier ? ExprNode::identifier(t.text, {t.offset, t.end()})
                                                            : ExprNode::number(t.text, {t.offset, t.end()});
            return {std::move(leaf), t.text, true, last_end_};
        }
        if (t.kind == TokenKind::Operator && (t.text == "*" || t.text == "+" || t.text == "-" || t.text == "'")) {
            advance();
            return {ExprNode::op(t.text, {}, {t.offset, t.end()}), t.text, true, last_end_};
        }
        if (t.kind == TokenKind::Command) {
            ExprNode node = parse_primary();
            std::string lexeme;
            for (std::size_t p = first; p < pos_; ++p) lexeme += toks_[p].text;
            return {std::move(node), "{" + lexeme + "}", false, last_end_};
        }
        throw ParseError(t.offset, "invalid script argument '" + t.text + "'");
    }

    void read_scripts(std::optional<Script>& sub, std::optional<Script>& sup) {
        while (true) {
            const MathToken* t = raw_next();
            if (!t) break;
            if (t->kind == TokenKind::SubscriptMarker) {
                if (sub) throw ParseError(t->offset, "double subscript");
                advance();
                sub = parse_script_arg();
            } else if (t->kind == TokenKind::SuperscriptMarker) {
                if (sup) throw ParseError(t->offset, "double superscript");
                advance();
                sup = parse_script_arg();
            } else {
                break;
            }
        }
    }

    static ExprNode make_scripted(ExprNode base, std::optional<Script>& sub, std::optional<Script>& sup,
                                  Interval span) {
        ExprNode s;
        s.kind = ExprKind::Scripted;
        s.children.push_back(std::move(base));
        if (sub) {
            s.has_sub = true;
            s.children.push_back(std::move(sub->node));
        }
        if (sup) {
            s.has_sup = true;
            s.children.push_back(std::move(sup->node));
        }
        s.span = span;
        return s;
    }

    ExprNode parse_scripted() {
        skip();
        const std::size_t start = here();
        ExprNode base = parse_primary();
        std::optional<Script> sub;
        std::optional<Script> sup;
        read_scripts(sub, sup);
        if (sub && base.kind == ExprKind::Identifier && base.text.find('_') == std::string::npos) {
            // x_1 is a single identifier
            base.text += "_" + sub->lexeme;
            base.span.end = std::max(base.span.end, sub->end);
            sub.reset();
        }
        if (!sub && !sup) {
            const MathToken* n = raw_next();
            if (base.kind != ExprKind::Identifier || !n || n->kind != TokenKind::OpenGroup || n->text != "(")
                return base;
            base = parse_call(std::move(base), start);
            read_scripts(sub, sup);  // f(x)^2
            if (!sub && !sup) return base;
        }
        return make_scripted(std::move(base), sub, sup, {start, last_end_});
    }

    // Parses `( args )` after a function head.
    ExprNode parse_call(ExprNode head, std::size_t start) {
        const MathToken& open = advance();
        auto args = parse_list(open);
        return ExprNode::func(std::move(head), std::move(args), {start, last_end_});
    }

    // Items separated by commas up to the closer matching `open`.
    std::vector<ExprNode> parse_list(const MathToken& open) {
        std::vector<ExprNode> items;
        const int family = tables::open_family(open.text);
        skip();
        if (!at_end() && peek().kind == TokenKind::CloseGroup) {
            advance();
            return items;
        }
        while (true) {
            items.push_back(parse_relation());
            skip();
            if (at_end()) throw ParseError(open.offset, "unmatched '" + open.text + "'");
            const MathToken& t = peek();
            if (t.kind == TokenKind::Operator && (t.text == "," || t.text == ";")) {
                advance();
                continue;
            }
            if (t.kind == TokenKind::CloseGroup && tables::close_family(t.text) == family) {
                advance();
                return items;
            }
            throw ParseError(t.offset, "unexpected '" + t.text + "'");
        }
    }

    // Content of a brace group up to `closer`; commas make a Sequence.
    ExprNode parse_group_body(std::string_view closer) {
        const std::size_t start = here();
        skip();
        if (!at_end() && peek().kind == TokenKind::CloseGroup)
            throw ParseError(peek().offset, "empty group");
        std::vector<ExprNode> items;
        while (true) {
            items.push_back(parse_relation());
            skip();
            if (at_end()) throw ParseError(start, "unterminated group");
            const MathToken& t = peek();
            if (t.kind == TokenKind::Operator && (t.text == "," || t.text == ";")) {
                advance();
                skip();
                if (!at_end() && peek().kind == TokenKind::CloseGroup && peek().text == closer) {
                    advance();
                    break;
                }
                continue;
            }
            if (is_line_break(t)) {
                advance();
                continue;
            }
            if (t.kind == TokenKind::CloseGroup && t.text == closer) {
                advance();
                break;
            }
            throw ParseError(t.offset, "unexpected '" + t.text + "'");
        }
        if (items.size() == 1) return std::move(items.front());
        ExprNode seq;
        seq.kind = ExprKind::Sequence;
        seq.children = std::move(items);
        seq.span = {start, last_end_};
        return seq;
    }

    ExprNode parse_brace_arg() {
        skip();
        if (at_end()) throw ParseError(last_end_, "missing argument");
        const MathToken& t = peek();
        if (t.kind == TokenKind::OpenGroup && t.text == "{") {
            advance();
            return parse_group_body("}");
        }
        if (t.kind == TokenKind::Identifier || t.kind == TokenKind::Number) {
            advance();
            return t.kind == TokenKind::Identifier ? ExprNode::identifier(t.text, {t.offset, t.end()})
                                                   : ExprNode::number(t.text, {t.offset, t.end()});
        }
        if (t.kind == TokenKind::Command) return parse_primary();
        throw ParseError(t.offset, "invalid argument '" + t.text + "'");
    }

    ExprNode parse_bars(const MathToken& open, bool norm) {
        const std::size_t start = open.offset;
        int& depth = norm ? norm_depth_ : abs_depth_;
        ++depth;
        ExprNode inner = parse_relation();
        --depth;
        skip();
        if (at_end() || (norm ? !is_norm_bar(peek()) : !is_abs_bar(peek())))
            throw ParseError(start, "unmatched '" + open.text + "'");
        const MathToken& close = advance();
        ExprNode n = ExprNode::op(open.text, {std::move(inner)}, {start, last_end_});
        n.closer = close.text;
        return n;
    }

    ExprNode parse_primary() {
        skip();
        if (at_end()) throw ParseError(last_end_, "expected an operand");
        const MathToken& t = advance();
        const Interval span{t.offset, t.end()};
        switch (t.kind) {
            case TokenKind::Identifier:
                return ExprNode::identifier(t.text, span);
            case TokenKind::Number:
                return ExprNode::number(t.text, span);
            case TokenKind::OpenGroup:
                return parse_delimited(t);
            case TokenKind::Operator:
                if (is_abs_bar(t) && abs_depth_ == 0) return parse_bars(t, false);
                if (is_norm_bar(t) && norm_depth_ == 0) return parse_bars(t, true);
                break;
            case TokenKind::Command:
                return parse_command(t);
            default:
                break;
        }
        throw ParseError(t.offset, "unexpected '" + t.text + "'");
    }

    ExprNode parse_delimited(const MathToken& open) {
        const std::size_t start = open.offset;
        if (open.text == "{") {
            ExprNode inner = parse_group_body("}");
            return inner;
        }
        auto items = parse_list(open);
        const std::string closer = toks_[pos_ - 1].text;
        if (open.text == "(" && closer == ")" && items.size() == 1) return std::move(items.front());
        ExprNode n = ExprNode::op(open.text, std::move(items), {start, last_end_});
        n.closer = closer;
        return n;
    }

    ExprNode parse_command(const MathToken& t) {
        const std::size_t start = t.offset;
        const std::string name = canonical_operator(t.text);
        if (tables::is_fraction(t.text)) {
            ExprNode num = parse_brace_arg();
            ExprNode den = parse_brace_arg();
            return ExprNode::op("\\frac", {std::move(num), std::move(den)}, {start, last_end_});
        }
        if (name == "\\binom") {
            ExprNode a = parse_brace_arg();
            ExprNode b = parse_brace_arg();
            return ExprNode::op("\\binom", {std::move(a), std::move(b)}, {start, last_end_});
        }
        if (name == "\\sqrt") {
            std::optional<ExprNode> index;
            const MathToken* n = raw_next();
            if (n && n->kind == TokenKind::OpenGroup && n->text == "[") {
                const MathToken& open = advance();
                auto items = parse_list(open);
                if (items.size() != 1) throw ParseError(open.offset, "bad root index");
                index = std::move(items.front());
            }
            ExprNode radicand = parse_brace_arg();
            std::vector<ExprNode> kids;
            kids.push_back(std::move(radicand));
            if (index) kids.push_back(std::move(*index));
            return ExprNode::op("\\sqrt", std::move(kids), {start, last_end_});
        }
        if (tables::is_raw_text_command(name)) {
            std::string text = name;
            const MathToken* n = raw_next();
            if (n && n->kind == TokenKind::OpenGroup && n->text == "{") {
                advance();
                std::string content;
                while (!at_end() && peek().kind != TokenKind::CloseGroup) content += advance().text;
                if (at_end()) throw ParseError(start, "unterminated argument");
                advance();
                text += "{" + content + "}";
            }
            ExprNode sym = ExprNode::op(text, {}, {start, last_end_});
            if (name == "\\operatorname") return parse_function(std::move(sym), start);
            return sym;
        }
        if (tables::is_function_name(name)) {
            return parse_function(ExprNode::op(name, {}, {start, t.end()}), start);
        }
        if (tables::is_decoration(name)) {
            ExprNode arg = parse_brace_arg();
            if (arg.kind == ExprKind::Identifier) {
                arg.text = name + "{" + arg.text + "}";
                arg.span = {start, last_end_};
                return arg;
            }
            return ExprNode::op(name, {std::move(arg)}, {start, last_end_});
        }
        if (tables::is_symbol_command(name)) return ExprNode::op(name, {}, {start, t.end()});
        if (is_line_break(t)) throw ParseError(t.offset, "unexpected line break");
        // Unknown macro: opaque operator over any brace arguments that follow.
        std::vector<ExprNode> args;
        while (true) {
            const MathToken* n = raw_next();
            if (!n || n->kind != TokenKind::OpenGroup || n->text != "{") break;
            advance();
            if (!at_end() && peek().kind == TokenKind::CloseGroup) {
                advance();
                continue;
            }
            args.push_back(parse_group_body("}"));
        }
        return ExprNode::op(name, std::move(args), {start, last_end_});
    }

    // \sin x, \log_2(n), \sin^2\theta, \max_i a_i
    ExprNode parse_function(ExprNode head, std::size_t start) {
        std::optional<Script> sub;
        std::optional<Script> sup;
        read_scripts(sub, sup);
        if (sub || sup) head = make_scripted(std::move(head), sub, sup, {start, last_end_});
        const MathToken* n = raw_next();
        if (n && n->kind == TokenKind::OpenGroup && n->text == "(") return parse_call(std::move(head), start);
        skip();
        if (!at_end() && starts_factor(peek())) {
            ExprNode arg = parse_postfix();
            return ExprNode::func(std::move(head), {std::move(arg)}, {start, last_end_});
        }
        return head;
    }

    std::span<const MathToken> toks_;
    std::size_t pos_ = 0;
    std::size_t last_end_ = 0;
    int abs_depth_ = 0;
    int norm_depth_ = 0;
};

}  // namespace

ExprNode parse_formula(std::span<const MathToken> tokens) { return Parser(tokens).parse(); }

ExprNode parse_latex(std::u32string_view src, const LexOptions& opts) {
    const auto toks = tokenize_latex(src, opts);
    if (toks.empty()) throw ParseError(opts.base_offset, "empty formula");
    return parse_formula(toks);
}

ExprNode parse_latex(std::string_view utf8_src, const LexOptions& opts) {
    const std::u32string decoded = util::decode_utf8(utf8_src);
    return parse_latex(std::u32string_view(decoded), opts);
}

}  // namespace mathreuse::mathparse
