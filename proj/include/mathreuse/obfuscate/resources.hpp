#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mathreuse/docmodel/reuse.hpp"
#include "mathreuse/mathparse/expr.hpp"

namespace mathreuse::obfuscate {

using mathparse::ExprNode;

// How an FM rewrite is verified numerically. `Value` compares the rewritten
// subtree with the original; `Residual` compares the adjacent differences of
// a relation (left minus right), scaled by `residual_scale`.
enum class RuleCheck { Value, Residual, None };
enum class RuleScope { Expression, Relation };

struct RewriteRule {
    std::string name;
    ExprNode pattern;
    ExprNode replacement;
    std::string pattern_latex;
    std::string replacement_latex;
    RuleScope scope = RuleScope::Expression;
    RuleCheck check = RuleCheck::Value;
    double residual_scale = 1.0;
    bool fold_constants = false;
    std::vector<std::string> tags;
    docmodel::ObfuscationOperator operator_tag = docmodel::ObfuscationOperator::FM;
    bool semantics_preserving = true;

    bool numerically_checkable() const { return check != RuleCheck::None; }
    bool has_tag(std::string_view t) const;
};

struct RuleLibrary {
    int version = 0;
    std::vector<RewriteRule> rules;

    static RuleLibrary from_json(std::string_view json_text);
    static const RuleLibrary& builtin();  // data/fm_rules_v1.json

    const RewriteRule* find(std::string_view name) const;
    RuleLibrary with_tag(std::string_view tag) const;
    RuleLibrary only(const std::vector<std::string>& names) const;  // throws on unknown names
};

// Alternative phrasings of one clause. `?M` stands for a whole math run.
struct ClauseTemplate {
    std::string name;
    std::vector<std::string> forms;
};

// A formula and its prose rendering. Metavariables in `math` appear in
// `text` as inline formulae `$?x$`.
struct MathTextEntry {
    std::string name;
    std::string text;
    std::string math_latex;
    ExprNode math;
};

struct Lexicon {
    int version = 0;
    std::vector<std::vector<std::string>> synonym_groups;
    std::vector<ClauseTemplate> clause_templates;
    std::vector<MathTextEntry> math_text;
    std::map<std::string, std::string> entity_map;
    std::vector<std::string> fillers;

    static Lexicon from_json(std::string_view json_text);
    static const Lexicon& builtin();  // data/lexicon_v1.json

    bool empty() const { return synonym_groups.empty() && clause_templates.empty(); }
};

}  // namespace mathreuse::obfuscate
