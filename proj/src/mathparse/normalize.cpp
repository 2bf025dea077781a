#include "mathreuse/mathparse/normalize.hpp"

#include <algorithm>
#include <json.hpp>
#include <stdexcept>

#include "data/embedded.hpp"
#include "mathreuse/mathparse/pattern.hpp"

namespace mathreuse::mathparse {

std::string collapse_decimal(std::string_view literal) {
    const auto dot = literal.find('.');
    if (dot == std::string_view::npos) return std::string(literal);
    std::size_t end = literal.size();
    while (end > dot + 1 && literal[end - 1] == '0') --end;
    if (end == dot + 1) --end;  // drop the point itself
    if (end == 0) return "0";
    return std::string(literal.substr(0, end));
}

CanonicalizationTable CanonicalizationTable::from_json(std::string_view json_text) {
    const auto doc = nlohmann::json::parse(json_text);
    CanonicalizationTable table;
    table.version = doc.at("version").get<int>();
    for (const auto& r : doc.at("rules")) {
        CanonicalRule rule;
        rule.name = r.at("name").get<std::string>();
        rule.native = r.value("native", false);
        if (!rule.native) {
            rule.variant = parse_template(r.at("variant").get<std::string>());
            rule.canonical = parse_template(r.at("canonical").get<std::string>());
            for (const auto& v : metavariables(rule.canonical)) {
                const auto have = metavariables(rule.variant);
                if (std::find(have.begin(), have.end(), v) == have.end())
                    throw std::invalid_argument("canonicalization rule " + rule.name + ": unbound " + v);
            }
        }
        table.rules.push_back(std::move(rule));
    }
    return table;
}

const CanonicalizationTable& CanonicalizationTable::builtin() {
    static const CanonicalizationTable table = from_json(data::embedded("canonicalization_v1.json"));
    return table;
}

namespace {

bool rewrite_once(ExprNode& e, const CanonicalizationTable& table) {
    for (const auto& rule : table.rules) {
        if (rule.native) {
            if (rule.name == "decimal-collapse" && e.kind == ExprKind::Number) {
                std::string c = collapse_decimal(e.text);
                if (c != e.text) {
                    e.text = std::move(c);
                    return true;
                }
            }
            continue;
        }
        Bindings b;
        if (match(rule.variant, e, b)) {
            e = instantiate(rule.canonical, b, e.span);
            return true;
        }
    }
    return false;
}

}  // namespace

ExprNode normalize(const ExprNode& e, const CanonicalizationTable& table) {
    ExprNode out = e;
    for (auto& c : out.children) c = normalize(c, table);
    // Each rewrite shrinks the tree or removes a variant operator, so this
    // terminates; the bound only guards against a malformed table.
    for (int guard = 0; guard < 256 && rewrite_once(out, table); ++guard) {
        for (auto& c : out.children) c = normalize(c, table);
    }
    return out;
}

}  // namespace mathreuse::mathparse
