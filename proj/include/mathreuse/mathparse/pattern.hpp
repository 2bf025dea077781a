#pragma once

#include <map>
#include <optional>
#include <string>

#include "mathreuse/mathparse/expr.hpp"

namespace mathreuse::mathparse {

// Templates are parsed with LexOptions::templates; `?name` leaves are
// metavariables that bind whole subtrees (consistently across occurrences).
using Bindings = std::map<std::string, ExprNode>;

bool is_metavariable(const ExprNode& e);

// Parses a template string (metavariables enabled).
ExprNode parse_template(std::string_view latex);

bool match(const ExprNode& pattern, const ExprNode& subject, Bindings& bindings);

// Substitutes bindings into a template. New nodes take `site` as their span.
ExprNode instantiate(const ExprNode& templ, const Bindings& bindings, Interval site = {});

// Metavariable names occurring in a template.
std::vector<std::string> metavariables(const ExprNode& templ);

}  // namespace mathreuse::mathparse
