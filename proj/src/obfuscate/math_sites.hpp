#pragma once

#include <string>
#include <vector>

#include "mathreuse/docmodel/document.hpp"
#include "mathreuse/mathparse/expr.hpp"

namespace mathreuse::obfuscate::detail {

// Relation nodes a formula states directly: the root, or the relation items
// of a root sequence.
std::vector<const mathparse::ExprNode*> stated_relations(const mathparse::ExprNode& root);

std::u32string render_u32(const mathparse::ExprNode& e);

// Replaces the part of a math run covered by its tree with `latex`, keeping
// delimiters, spacing and trailing punctuation.
std::u32string rerender_run(const docmodel::Document& doc, const docmodel::Run& run, const std::u32string& latex);

}  // namespace mathreuse::obfuscate::detail
