#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mathreuse/mathparse/expr.hpp"

namespace mathreuse::mathparse {

// One entry of the synonym canonicalization table. `native` entries are
// implemented in code (decimal collapse); the others are template rewrites
// from the non-canonical `variant` to the `canonical` form.
struct CanonicalRule {
    std::string name;
    bool native = false;
    ExprNode variant;
    ExprNode canonical;
};

struct CanonicalizationTable {
    int version = 0;
    std::vector<CanonicalRule> rules;

    static CanonicalizationTable from_json(std::string_view json_text);
    // The table shipped in data/canonicalization_v1.json.
    static const CanonicalizationTable& builtin();
};

// Rewrites to the table's fixed point (bottom-up, repeated until stable).
ExprNode normalize(const ExprNode& e, const CanonicalizationTable& table = CanonicalizationTable::builtin());

// "1.0" -> "1", "2.50" -> "2.5"; other literals unchanged.
std::string collapse_decimal(std::string_view literal);

}  // namespace mathreuse::mathparse
