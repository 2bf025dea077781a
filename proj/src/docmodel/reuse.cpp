#include "mathreuse/docmodel/reuse.hpp"

namespace mathreuse::docmodel {

std::string_view to_string(ObfuscationOperator op) {
    switch (op) {
        case ObfuscationOperator::P: return "P";
        case ObfuscationOperator::ID: return "ID";
        case ObfuscationOperator::S: return "S";
        case ObfuscationOperator::TMMT: return "TMMT";
        case ObfuscationOperator::DP: return "DP";
        case ObfuscationOperator::FM: return "FM";
        case ObfuscationOperator::VS: return "VS";
    }
    return "?";
}

std::optional<ObfuscationOperator> parse_operator(std::string_view abbreviation) {
    for (auto op : kAllOperators)
        if (to_string(op) == abbreviation) return op;
    return std::nullopt;
}

std::size_t OperatorSet::size() const {
    std::size_t n = 0;
    for (auto op : kAllOperators) n += contains(op) ? 1 : 0;
    return n;
}

std::vector<ObfuscationOperator> OperatorSet::items() const {
    std::vector<ObfuscationOperator> out;
    for (auto op : kAllOperators)
        if (contains(op)) out.push_back(op);
    return out;
}

std::vector<std::string> OperatorSet::names() const {
    std::vector<std::string> out;
    for (auto op : items()) out.emplace_back(docmodel::to_string(op));
    return out;
}

std::string OperatorSet::to_string() const {
    std::string out;
    for (const auto& n : names()) {
        if (!out.empty()) out += "+";
        out += n;
    }
    return out;
}

}  // namespace mathreuse::docmodel
