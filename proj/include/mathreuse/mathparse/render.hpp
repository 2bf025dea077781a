#pragma once

#include <string>

#include "mathreuse/mathparse/expr.hpp"

namespace mathreuse::mathparse {

// Prints a tree back to LaTeX. parse_latex(render_latex(e)) is structurally
// equal to e for every parsed tree.
std::string render_latex(const ExprNode& e);

}  // namespace mathreuse::mathparse
