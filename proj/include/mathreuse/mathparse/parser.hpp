#pragma once

#include <span>
#include <string_view>

#include "mathreuse/mathparse/expr.hpp"
#include "mathreuse/mathparse/token.hpp"

namespace mathreuse::mathparse {

// Precedence, tightest first: scripts, function application, multiplication
// (explicit and juxtaposition), additive operators, relators. Trailing
// sentence punctuation is dropped. Throws ParseError on empty input and
// dangling operators.
ExprNode parse_formula(std::span<const MathToken> tokens);

// tokenize + parse.
ExprNode parse_latex(std::u32string_view src, const LexOptions& opts = {});
ExprNode parse_latex(std::string_view utf8_src, const LexOptions& opts = {});

}  // namespace mathreuse::mathparse
