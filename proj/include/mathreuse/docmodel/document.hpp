#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mathreuse/mathparse/expr.hpp"
#include "mathreuse/mathparse/token.hpp"
#include "mathreuse/util/interval.hpp"

namespace mathreuse::docmodel {

using util::Interval;

enum class RunKind { Text, Math };

struct ParseFailure {
    std::size_t offset = 0;  // document coordinates
    std::string message;
};

// A maximal stretch of prose or one delimited formula. For math runs `span`
// includes the delimiters and `body` is the formula between them.
struct Run {
    RunKind kind = RunKind::Text;
    Interval span;
    Interval body;
    std::string delimiter;  // "$", "$$", "\[", "\(", or an environment name
    std::optional<mathparse::ExprNode> tree;
    std::optional<ParseFailure> failure;

    bool is_math() const { return kind == RunKind::Math; }
};

struct Document {
    std::string id;
    std::u32string text;
    std::vector<Run> runs;

    std::size_t length() const { return text.size(); }
    std::string slice(Interval iv) const;        // UTF-8
    std::string body_latex(const Run& r) const;  // UTF-8 of a math run body
    std::string utf8() const;
    std::vector<const Run*> math_runs() const;
};

class SegmentError : public std::runtime_error {
public:
    SegmentError(std::size_t offset, const std::string& message)
        : std::runtime_error(message), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Splits LaTeX source into text and math runs and parses every formula.
// Recognised math: $..$, $$..$$, \(..\), \[..\] and the equation, align,
// gather, multline and eqnarray environments (starred or not). \$ is text.
// Throws SegmentError on an unterminated delimiter.
Document segment_document(std::string id, std::string_view latex_utf8);
Document segment_document(std::string id, std::u32string text);

enum class CaseType { Text, Math, Both };

std::string_view to_string(CaseType t);
std::optional<CaseType> parse_case_type(std::string_view s);

// Content-based classification of a span: Math when every non-space
// character lies in a math run, Text when none does, Both otherwise.
CaseType classify_span(const Document& doc, Interval span);

// True when the span intersects at least one math run.
bool touches_math(const Document& doc, Interval span);

}  // namespace mathreuse::docmodel
