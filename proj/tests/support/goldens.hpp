#pragma once

#include <string>
#include <vector>

namespace mathreuse::testing {

// One worked example per operator: the source text, the operator output and
// the expected inspected text. Compared with all whitespace removed.
struct Golden {
    std::string op;
    std::string source;
    std::string actual;
    std::string expected;

    bool matches() const;
};

std::vector<Golden> operator_goldens();

}  // namespace mathreuse::testing
