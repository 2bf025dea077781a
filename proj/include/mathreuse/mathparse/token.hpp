#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mathreuse::mathparse {

enum class TokenKind {
    Identifier,
    Number,
    Operator,
    Relation,
    Command,
    OpenGroup,
    CloseGroup,
    SubscriptMarker,
    SuperscriptMarker,
};

std::string_view to_string(TokenKind kind);

struct MathToken {
    TokenKind kind;
    std::string text;        // source lexeme, UTF-8
    std::size_t offset = 0;  // code points, in the coordinates of the caller
    std::size_t length = 0;  // code points

    std::size_t end() const { return offset + length; }
};

// Thrown for lexing and parsing failures. `offset` uses the same coordinates
// as the token offsets (source-relative plus the caller's base).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : std::runtime_error(message), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

struct LexOptions {
    std::size_t base_offset = 0;
    // Accept `?name` metavariables (rule and lexicon templates).
    bool templates = false;
};

// Splits a math-mode LaTeX fragment into tokens. Unknown commands become
// Command tokens. Throws ParseError naming the first unmatched group opener
// (or the stray closer) when delimiters do not balance.
std::vector<MathToken> tokenize_latex(std::u32string_view src, const LexOptions& opts = {});
std::vector<MathToken> tokenize_latex(std::string_view utf8_src, const LexOptions& opts = {});

}  // namespace mathreuse::mathparse
