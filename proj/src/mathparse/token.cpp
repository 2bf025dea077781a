#include "mathreuse/mathparse/token.hpp"

#include <vector>

#include "lexicon_tables.hpp"
#include "mathreuse/util/utf8.hpp"

namespace mathreuse::mathparse {

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Identifier: return "identifier";
        case TokenKind::Number: return "number";
        case TokenKind::Operator: return "operator";
        case TokenKind::Relation: return "relation";
        case TokenKind::Command: return "command";
        case TokenKind::OpenGroup: return "open-group";
        case TokenKind::CloseGroup: return "close-group";
        case TokenKind::SubscriptMarker: return "subscript-marker";
        case TokenKind::SuperscriptMarker: return "superscript-marker";
    }
    return "?";
}

namespace {

using util::encode_utf8;
using util::is_ascii_digit;
using util::is_ascii_letter;
using util::is_space;

bool is_greek_letter(char32_t c) { return (c >= 0x391 && c <= 0x3A9) || (c >= 0x3B1 && c <= 0x3C9); }

bool is_unicode_relation(char32_t c) {
    switch (c) {
        case 0x2264: case 0x2265: case 0x2260: case 0x2208: case 0x2209: case 0x2282:
        case 0x2286: case 0x2283: case 0x2287: case 0x2261: case 0x223C: case 0x2192:
        case 0x2248: case 0x21D2: case 0x21D4: case 0x2245:
            return true;
        default:
            return false;
    }
}

class Lexer {
public:
    Lexer(std::u32string_view src, const LexOptions& opts) : src_(src), opts_(opts) {}

    std::vector<MathToken> run() {
        while (pos_ < src_.size()) step();
        if (!open_.empty()) {
            const auto& first = out_[open_.front()];
            throw ParseError(first.offset, "unmatched '" + first.text + "'");
        }
        return std::move(out_);
    }

private:
    void emit(TokenKind kind, std::size_t start, std::size_t end) {
        emit(kind, encode_utf8(src_.substr(start, end - start)), start, end);
    }

    void emit(TokenKind kind, std::string text, std::size_t start, std::size_t end) {
        MathToken tok{kind, std::move(text), opts_.base_offset + start, end - start};
        if (kind == TokenKind::OpenGroup) {
            open_.push_back(out_.size());
        } else if (kind == TokenKind::CloseGroup) {
            const int fam = tables::close_family(tok.text);
            if (open_.empty()) throw ParseError(tok.offset, "unmatched '" + tok.text + "'");
            const auto& opener = out_[open_.back()];
            if (tables::open_family(opener.text) != fam)
                throw ParseError(opener.offset, "unmatched '" + opener.text + "'");
            open_.pop_back();
        }
        out_.push_back(std::move(tok));
    }

    bool after_script_marker() const {
        return !out_.empty() && (out_.back().kind == TokenKind::SubscriptMarker ||
                                 out_.back().kind == TokenKind::SuperscriptMarker);
    }

    void step() {
        const char32_t c = src_[pos_];
        const std::size_t start = pos_;
        if (is_space(c)) {
            ++pos_;
            return;
        }
        if (is_ascii_letter(c)) {
            ++pos_;
            emit(TokenKind::Identifier, start, pos_);
            return;
        }
        if (opts_.templates && c == U'?' && pos_ + 1 < src_.size() && is_ascii_letter(src_[pos_ + 1])) {
            ++pos_;
            while (pos_ < src_.size() && (is_ascii_letter(src_[pos_]) || is_ascii_digit(src_[pos_]))) ++pos_;
            emit(TokenKind::Identifier, start, pos_);
            return;
        }
        if (is_ascii_digit(c)) {
            lex_number(start);
            return;
        }
        if (c == U'\\') {
            lex_command(start);
            return;
        }
        ++pos_;
        switch (c) {
            case U'{': case U'(': case U'[':
                emit(TokenKind::OpenGroup, start, pos_);
                return;
            case U'}': case U')': case U']':
                emit(TokenKind::CloseGroup, start, pos_);
                return;
            case U'_':
                emit(TokenKind::SubscriptMarker, start, pos_);
                return;
            case U'^':
                emit(TokenKind::SuperscriptMarker, start, pos_);
                return;
            case U'=': case U'<': case U'>': case U':':
                emit(TokenKind::Relation, start, pos_);
                return;
            case U'~':
                emit(TokenKind::Command, start, pos_);
                return;
            case 0x27E8:
                emit(TokenKind::OpenGroup, start, pos_);
                return;
            case 0x27E9:
                emit(TokenKind::CloseGroup, start, pos_);
                return;
            default:
                break;
        }
        if (is_greek_letter(c)) {
            emit(TokenKind::Identifier, start, pos_);
        } else if (is_unicode_relation(c)) {
            emit(TokenKind::Relation, start, pos_);
        } else {
            // + - * / , ; ! ' | . & and anything unmodelled
            emit(TokenKind::Operator, start, pos_);
        }
    }

    void lex_number(std::size_t start) {
        if (after_script_marker()) {
            // x^23 means x^{2}3 in TeX.
            ++pos_;
            emit(TokenKind::Number, start, pos_);
            return;
        }
        while (pos_ < src_.size() && is_ascii_digit(src_[pos_])) ++pos_;
        if (pos_ + 1 < src_.size() && src_[pos_] == U'.' && is_ascii_digit(src_[pos_ + 1])) {
            ++pos_;
            while (pos_ < src_.size() && is_ascii_digit(src_[pos_])) ++pos_;
        }
        emit(TokenKind::Number, start, pos_);
    }

    void lex_command(std::size_t start) {
        ++pos_;
        if (pos_ >= src_.size()) {
            emit(TokenKind::Command, start, pos_);
            return;
        }
        if (!is_ascii_letter(src_[pos_])) {
            ++pos_;
            const std::string text = encode_utf8(src_.substr(start, pos_ - start));
            if (text == "\\{") {
                emit(TokenKind::OpenGroup, text, start, pos_);
            } else if (text == "\\}") {
                emit(TokenKind::CloseGroup, text, start, pos_);
            } else if (text == "\\|") {
                emit(TokenKind::Operator, text, start, pos_);
            } else {
                emit(TokenKind::Command, text, start, pos_);
            }
            return;
        }
        while (pos_ < src_.size() && is_ascii_letter(src_[pos_])) ++pos_;
        const std::string name = encode_utf8(src_.substr(start, pos_ - start));
        if (tables::is_greek(name)) {
            emit(TokenKind::Identifier, name, start, pos_);
        } else if (tables::is_relation_command(name)) {
            emit(TokenKind::Relation, name, start, pos_);
        } else if (tables::is_binary_command(name)) {
            emit(TokenKind::Operator, name, start, pos_);
        } else if (tables::open_family(name) != 0) {
            emit(TokenKind::OpenGroup, name, start, pos_);
        } else if (tables::close_family(name) != 0) {
            emit(TokenKind::CloseGroup, name, start, pos_);
        } else {
            emit(TokenKind::Command, name, start, pos_);
            if (tables::is_raw_text_command(name)) lex_raw_argument();
        }
    }

    // \text{...} and friends: the braced argument is prose, kept as one opaque
    // token so its letters are not mistaken for identifiers.
    void lex_raw_argument() {
        std::size_t p = pos_;
        while (p < src_.size() && is_space(src_[p])) ++p;
        if (p >= src_.size() || src_[p] != U'{') return;
        pos_ = p;
        emit(TokenKind::OpenGroup, pos_, pos_ + 1);
        ++pos_;
        const std::size_t content = pos_;
        int depth = 0;
        while (pos_ < src_.size()) {
            const char32_t c = src_[pos_];
            if (c == U'\\' && pos_ + 1 < src_.size()) {
                pos_ += 2;
                continue;
            }
            if (c == U'{') ++depth;
            if (c == U'}') {
                if (depth == 0) break;
                --depth;
            }
            ++pos_;
        }
        if (pos_ > content) emit(TokenKind::Command, content, pos_);
        if (pos_ < src_.size()) {
            emit(TokenKind::CloseGroup, pos_, pos_ + 1);
            ++pos_;
        }
    }

    std::u32string_view src_;
    LexOptions opts_;
    std::size_t pos_ = 0;
    std::vector<MathToken> out_;
    std::vector<std::size_t> open_;
};

}  // namespace

std::vector<MathToken> tokenize_latex(std::u32string_view src, const LexOptions& opts) {
    return Lexer(src, opts).run();
}

std::vector<MathToken> tokenize_latex(std::string_view utf8_src, const LexOptions& opts) {
    const std::u32string decoded = util::decode_utf8(utf8_src);
    return tokenize_latex(std::u32string_view(decoded), opts);
}

}  // namespace mathreuse::mathparse
