#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "mathreuse/mathparse/expr.hpp"

namespace mathreuse::mathparse {

class NotEvaluable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Assignment = std::map<std::string, double>;

// Real-valued evaluation. Inner products and norms use the scalar model
// <a,b> = ab, ||a|| = |a|. Throws NotEvaluable for relations, sequences,
// opaque symbols and unassigned identifiers.
double evaluate(const ExprNode& e, const Assignment& values);

}  // namespace mathreuse::mathparse
