#pragma once

// Matching helpers over document text shared by the operators.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mathreuse/docmodel/document.hpp"
#include "mathreuse/mathparse/expr.hpp"

namespace mathreuse::obfuscate::detail {

using docmodel::Document;
using util::Interval;

std::u32string u32(std::string_view utf8);

bool is_word_char(char32_t c);
bool is_sentence_punct(char32_t c);

// Per-position flags: true where the character belongs to a text run.
std::vector<bool> text_mask(const Document& doc);

// Index of the run whose span starts at `pos`, if it is a math run.
std::optional<std::size_t> math_run_starting_at(const Document& doc, std::size_t pos);

// Matches `phrase` at `pos` as a whole word inside text positions. A space in
// the phrase matches one or more whitespace characters. Returns the end.
std::optional<std::size_t> match_phrase(const Document& doc, const std::vector<bool>& mask, std::size_t pos,
                                        std::u32string_view phrase);

std::u32string capitalize(std::u32string s);

// A sentence pattern: literal characters, `?Name` for a whole math run,
// `$?Name$` for a math run holding a single identifier, and `$...$` for a
// math run with exactly that body (ignoring whitespace).
class TextTemplate {
public:
    explicit TextTemplate(std::string_view pattern);

    struct Match {
        Interval span;
        std::map<std::string, std::size_t> runs;             // ?Name -> run index
        std::map<std::string, mathparse::ExprNode> idents;   // $?Name$ -> identifier
    };

    std::optional<Match> match_at(const Document& doc, const std::vector<bool>& mask, std::size_t pos) const;

    struct RunFill {
        std::u32string text;
        std::optional<char32_t> punct;  // trailing punctuation inside the run
    };

    // Fills the pattern: run slots take their text verbatim, identifier slots
    // become `$name$`. Punctuation right after a run slot is dropped when the
    // run already ends with it.
    std::u32string fill(const std::map<std::string, RunFill>& runs,
                        const std::map<std::string, std::string>& ident_names) const;

    bool ends_with_punct() const;
    char32_t first_char() const;

private:
    enum class Kind { Literal, Space, RunSlot, IdentSlot, FixedRun };
    struct Piece {
        Kind kind;
        char32_t ch = 0;
        std::string name;
    };
    std::vector<Piece> pieces_;
};

// `repl` padded with a space on either side where, spliced over `iv`, a
// command name would otherwise run into a letter.
std::u32string guard_splice(std::u32string_view text, Interval iv, std::u32string_view repl);

// Last non-space character of a math run body, when it is sentence punctuation.
std::optional<char32_t> trailing_punct(const Document& doc, const docmodel::Run& run);

}  // namespace mathreuse::obfuscate::detail
