#pragma once

// Rule application shared by FM and the ID derivation steps.

#include <vector>

#include "mathreuse/mathparse/expr.hpp"
#include "mathreuse/obfuscate/resources.hpp"

namespace mathreuse::obfuscate::detail {

using Path = std::vector<std::size_t>;

struct RuleSite {
    std::size_t rule;
    Path path;
};

// Every (rule, node) pair where the rule's pattern matches, rules in library
// order and nodes in preorder.
std::vector<RuleSite> rule_sites(const ExprNode& e, const RuleLibrary& rules);

const ExprNode& node_at(const ExprNode& root, const Path& p);
ExprNode& node_at(ExprNode& root, const Path& p);

// The rewritten node for a site (with constant folding when the rule asks).
ExprNode rewrite_at(const ExprNode& root, const RuleSite& site, const RuleLibrary& rules);

// Folds integer constants in +/- chains: (y-2)-3 becomes y-5.
ExprNode fold_constants(const ExprNode& e);

}  // namespace mathreuse::obfuscate::detail
