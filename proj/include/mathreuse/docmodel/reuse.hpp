#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mathreuse/docmodel/document.hpp"

namespace mathreuse::docmodel {

struct Span {
    std::string doc_id;
    std::size_t start = 0;
    std::size_t end = 0;

    Interval interval() const { return {start, end}; }
    std::size_t length() const { return end > start ? end - start : 0; }
    friend bool operator==(const Span&, const Span&) = default;
};

enum class ObfuscationOperator : std::uint8_t { P, ID, S, TMMT, DP, FM, VS };

inline constexpr std::array<ObfuscationOperator, 7> kAllOperators = {
    ObfuscationOperator::P,  ObfuscationOperator::ID, ObfuscationOperator::S,  ObfuscationOperator::TMMT,
    ObfuscationOperator::DP, ObfuscationOperator::FM, ObfuscationOperator::VS};

std::string_view to_string(ObfuscationOperator op);
std::optional<ObfuscationOperator> parse_operator(std::string_view abbreviation);

// Set of operators, iterated in the order of kAllOperators.
class OperatorSet {
public:
    OperatorSet() = default;
    OperatorSet(std::initializer_list<ObfuscationOperator> ops) {
        for (auto op : ops) insert(op);
    }

    void insert(ObfuscationOperator op) { bits_ |= bit(op); }
    void insert(const OperatorSet& other) { bits_ |= other.bits_; }
    bool contains(ObfuscationOperator op) const { return (bits_ & bit(op)) != 0; }
    bool empty() const { return bits_ == 0; }
    std::size_t size() const;
    std::vector<ObfuscationOperator> items() const;
    std::vector<std::string> names() const;
    std::string to_string() const;  // "P+ID"
    friend bool operator==(const OperatorSet&, const OperatorSet&) = default;

private:
    static std::uint8_t bit(ObfuscationOperator op) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(op)); }
    std::uint8_t bits_ = 0;
};

struct ReuseCase {
    Span src;
    Span insp;
    OperatorSet ops;
    CaseType case_type = CaseType::Text;

    friend bool operator==(const ReuseCase&, const ReuseCase&) = default;
};

}  // namespace mathreuse::docmodel
