#include "mathreuse/obfuscate/resources.hpp"

#include <algorithm>
#include <json.hpp>
#include <stdexcept>

#include "data/embedded.hpp"
#include "mathreuse/mathparse/pattern.hpp"

namespace mathreuse::obfuscate {
namespace {

using nlohmann::json;

void require_bound(const ExprNode& from, const ExprNode& to, const std::string& what) {
    const auto have = mathparse::metavariables(from);
    for (const auto& v : mathparse::metavariables(to))
        if (std::find(have.begin(), have.end(), v) == have.end())
            throw std::invalid_argument(what + ": metavariable " + v + " is not bound by the pattern");
}

}  // namespace

bool RewriteRule::has_tag(std::string_view t) const {
    return std::find(tags.begin(), tags.end(), t) != tags.end();
}

RuleLibrary RuleLibrary::from_json(std::string_view json_text) {
    const json doc = json::parse(json_text);
    RuleLibrary lib;
    lib.version = doc.at("version").get<int>();
    for (const auto& r : doc.at("rules")) {
        RewriteRule rule;
        rule.name = r.at("name").get<std::string>();
        rule.pattern_latex = r.at("pattern").get<std::string>();
        rule.replacement_latex = r.at("replacement").get<std::string>();
        rule.pattern = mathparse::parse_template(rule.pattern_latex);
        rule.replacement = mathparse::parse_template(rule.replacement_latex);
        require_bound(rule.pattern, rule.replacement, "rule " + rule.name);

        const std::string scope = r.value("scope", "expression");
        if (scope == "expression") rule.scope = RuleScope::Expression;
        else if (scope == "relation") rule.scope = RuleScope::Relation;
        else throw std::invalid_argument("rule " + rule.name + ": unknown scope " + scope);

        const std::string check = r.value("check", "value");
        if (check == "value") rule.check = RuleCheck::Value;
        else if (check == "residual") rule.check = RuleCheck::Residual;
        else if (check == "none") rule.check = RuleCheck::None;
        else throw std::invalid_argument("rule " + rule.name + ": unknown check " + check);

        rule.residual_scale = r.value("residual_scale", 1.0);
        rule.fold_constants = r.value("post", std::string()) == "fold-constants";
        rule.tags = r.value("tags", std::vector<std::string>{});
        const auto op = docmodel::parse_operator(r.value("operator", std::string("FM")));
        if (!op) throw std::invalid_argument("rule " + rule.name + ": unknown operator");
        rule.operator_tag = *op;
        rule.semantics_preserving = r.value("semantics_preserving", true);
        if (rule.operator_tag == docmodel::ObfuscationOperator::FM && !rule.semantics_preserving)
            throw std::invalid_argument("rule " + rule.name + ": FM rules must preserve semantics");
        lib.rules.push_back(std::move(rule));
    }
    return lib;
}

const RuleLibrary& RuleLibrary::builtin() {
    static const RuleLibrary lib = from_json(data::embedded("fm_rules_v1.json"));
    return lib;
}

const RewriteRule* RuleLibrary::find(std::string_view name) const {
    for (const auto& r : rules)
        if (r.name == name) return &r;
    return nullptr;
}

RuleLibrary RuleLibrary::with_tag(std::string_view tag) const {
    RuleLibrary out;
    out.version = version;
    for (const auto& r : rules)
        if (r.has_tag(tag)) out.rules.push_back(r);
    return out;
}

RuleLibrary RuleLibrary::only(const std::vector<std::string>& names) const {
    RuleLibrary out;
    out.version = version;
    for (const auto& n : names) {
        const RewriteRule* r = find(n);
        if (!r) throw std::invalid_argument("unknown rule " + n);
        out.rules.push_back(*r);
    }
    return out;
}

Lexicon Lexicon::from_json(std::string_view json_text) {
    const json doc = json::parse(json_text);
    Lexicon lex;
    lex.version = doc.at("version").get<int>();
    for (const auto& g : doc.value("synonym_groups", json::array())) {
        auto group = g.get<std::vector<std::string>>();
        if (group.size() < 2) throw std::invalid_argument("synonym group needs two phrases");
        lex.synonym_groups.push_back(std::move(group));
    }
    for (const auto& t : doc.value("clause_templates", json::array())) {
        ClauseTemplate ct{t.at("name").get<std::string>(), t.at("forms").get<std::vector<std::string>>()};
        if (ct.forms.size() < 2) throw std::invalid_argument("clause template " + ct.name + " needs two forms");
        lex.clause_templates.push_back(std::move(ct));
    }
    for (const auto& m : doc.value("math_text", json::array())) {
        MathTextEntry e;
        e.name = m.at("name").get<std::string>();
        e.text = m.at("text").get<std::string>();
        e.math_latex = m.at("math").get<std::string>();
        e.math = mathparse::parse_template(e.math_latex);
        lex.math_text.push_back(std::move(e));
    }
    lex.entity_map = doc.value("entity_map", std::map<std::string, std::string>{});
    lex.fillers = doc.value("fillers", std::vector<std::string>{});
    return lex;
}

const Lexicon& Lexicon::builtin() {
    static const Lexicon lex = from_json(data::embedded("lexicon_v1.json"));
    return lex;
}

}  // namespace mathreuse::obfuscate
