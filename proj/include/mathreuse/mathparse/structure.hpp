#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mathreuse/mathparse/expr.hpp"

namespace mathreuse::mathparse {

// Relation-free subtrees that cannot grow without crossing a relator. A
// relation-free formula is its own single maximal expression.
std::vector<ExprNode> maximal_expressions(const ExprNode& formula);

// Identifier leaf names in source order, duplicates kept.
std::vector<std::string> identifiers(const ExprNode& formula);

// Identifier leaves themselves (for their spans), same order as identifiers().
std::vector<const ExprNode*> identifier_leaves(const ExprNode& formula);

// Distinct identifier names in order of first occurrence.
std::vector<std::string> distinct_identifiers(const ExprNode& formula);

using IdentifierMap = std::map<std::string, std::string>;

// Bijection between identifier names under which e1 and e2 are structurally
// identical, or nullopt. Callers normally pass normalized trees.
std::optional<IdentifierMap> alpha_equivalent(const ExprNode& e1, const ExprNode& e2);

// Applies a name substitution to every Identifier leaf.
ExprNode rename_identifiers(const ExprNode& e, const IdentifierMap& rename);

}  // namespace mathreuse::mathparse
