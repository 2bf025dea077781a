#include "mathreuse/mathparse/evaluate.hpp"

#include <cmath>
#include <string>

namespace mathreuse::mathparse {
namespace {

double eval(const ExprNode& e, const Assignment& values);

double number_value(const std::string& literal) {
    try {
        return std::stod(literal);
    } catch (const std::exception&) {
        throw NotEvaluable("bad number " + literal);
    }
}

double apply_function(const std::string& name, double x) {
    if (name == "\\sin") return std::sin(x);
    if (name == "\\cos") return std::cos(x);
    if (name == "\\tan") return std::tan(x);
    if (name == "\\exp") return std::exp(x);
    if (name == "\\ln" || name == "\\log") return std::log(x);
    if (name == "\\sinh") return std::sinh(x);
    if (name == "\\cosh") return std::cosh(x);
    if (name == "\\tanh") return std::tanh(x);
    throw NotEvaluable("function " + name);
}

double eval_op(const ExprNode& e, const Assignment& values) {
    const auto& k = e.children;
    if (!e.closer.empty()) {
        if ((e.text == "|" || e.text == "\\lvert") && k.size() == 1) return std::fabs(eval(k[0], values));
        if ((e.text == "\\|" || e.text == "‖" || e.text == "\\lVert") && k.size() == 1)
            return std::fabs(eval(k[0], values));
        if ((e.text == "\\langle" || e.text == "⟨") && k.size() == 2) return eval(k[0], values) * eval(k[1], values);
        if (e.text == "[" && e.closer == "]" && k.size() == 1) return eval(k[0], values);
        throw NotEvaluable("delimited group " + e.text);
    }
    if (e.postfix) {
        if (e.text == "!") return std::tgamma(eval(k[0], values) + 1.0);
        throw NotEvaluable("postfix " + e.text);
    }
    if (k.size() == 2 && (e.text == "\\frac")) return eval(k[0], values) / eval(k[1], values);
    if (e.text == "\\sqrt") {
        const double x = eval(k[0], values);
        if (k.size() == 2) return std::pow(x, 1.0 / eval(k[1], values));
        return std::sqrt(x);
    }
    if (k.size() == 2) {
        const double a = eval(k[0], values);
        const double b = eval(k[1], values);
        if (e.text == "+") return a + b;
        if (e.text == "-") return a - b;
        if (e.text.empty() || e.text == "*" || e.text == "\\cdot" || e.text == "\\times") return a * b;
        if (e.text == "/" || e.text == "\\div") return a / b;
        throw NotEvaluable("operator " + e.text);
    }
    if (k.size() == 1) {
        if (e.text == "-") return -eval(k[0], values);
        if (e.text == "+") return eval(k[0], values);
    }
    throw NotEvaluable("operator " + e.text);
}

double eval(const ExprNode& e, const Assignment& values) {
    switch (e.kind) {
        case ExprKind::Number:
            return number_value(e.text);
        case ExprKind::Identifier: {
            const auto it = values.find(e.text);
            if (it == values.end()) throw NotEvaluable("unassigned identifier " + e.text);
            return it->second;
        }
        case ExprKind::OpApply:
            return eval_op(e, values);
        case ExprKind::Scripted: {
            if (e.has_sub) throw NotEvaluable("subscripted expression");
            return std::pow(eval(e.children[0], values), eval(*e.sup(), values));
        }
        case ExprKind::FuncApply: {
            const ExprNode& head = e.children[0];
            if (head.kind != ExprKind::OpApply || !head.children.empty() || e.children.size() != 2)
                throw NotEvaluable("function application");
            return apply_function(head.text, eval(e.children[1], values));
        }
        case ExprKind::Relation:
        case ExprKind::Sequence:
            break;
    }
    throw NotEvaluable("relation or sequence");
}

}  // namespace

double evaluate(const ExprNode& e, const Assignment& values) {
    const double v = eval(e, values);
    if (!std::isfinite(v)) throw NotEvaluable("non-finite value");
    return v;
}

}  // namespace mathreuse::mathparse
