#include "mathreuse/mathparse/relator.hpp"

#include <array>

namespace mathreuse::mathparse {
namespace {

enum class Family { Ascii, Short, Long, Unicode };

struct Spelling {
    std::string_view lexeme;
    Relator rel;
    Family family;
};

constexpr std::array<Spelling, 24> kSpellings = {{
    {"=", Relator::Eq, Family::Ascii},
    {"\\neq", Relator::Neq, Family::Long},
    {"\\ne", Relator::Neq, Family::Short},
    {"≠", Relator::Neq, Family::Unicode},
    {"\\not=", Relator::Neq, Family::Ascii},
    {"<", Relator::Lt, Family::Ascii},
    {"\\lt", Relator::Lt, Family::Short},
    {">", Relator::Gt, Family::Ascii},
    {"\\gt", Relator::Gt, Family::Short},
    {"\\leq", Relator::Le, Family::Long},
    {"\\le", Relator::Le, Family::Short},
    {"≤", Relator::Le, Family::Unicode},
    {"\\geq", Relator::Ge, Family::Long},
    {"\\ge", Relator::Ge, Family::Short},
    {"≥", Relator::Ge, Family::Unicode},
    {"\\in", Relator::In, Family::Long},
    {"∈", Relator::In, Family::Unicode},
    {"\\subset", Relator::Subset, Family::Long},
    {"⊂", Relator::Subset, Family::Unicode},
    {"\\subseteq", Relator::SubsetEq, Family::Long},
    {"⊆", Relator::SubsetEq, Family::Unicode},
    {"\\equiv", Relator::Equiv, Family::Long},
    {"≡", Relator::Equiv, Family::Unicode},
    {"\\sim", Relator::Sim, Family::Long},
}};

std::optional<Family> family_of(std::string_view lexeme) {
    for (const auto& s : kSpellings)
        if (s.lexeme == lexeme) return s.family;
    if (lexeme == "∼") return Family::Unicode;
    return std::nullopt;
}

}  // namespace

std::optional<Relator> classify_relator(std::string_view lexeme) {
    for (const auto& s : kSpellings)
        if (s.lexeme == lexeme) return s.rel;
    if (lexeme == "∼") return Relator::Sim;
    return std::nullopt;
}

std::optional<Relator> mirror(Relator r) {
    switch (r) {
        case Relator::Eq:
        case Relator::Neq:
        case Relator::Equiv:
        case Relator::Sim:
            return r;
        case Relator::Lt: return Relator::Gt;
        case Relator::Gt: return Relator::Lt;
        case Relator::Le: return Relator::Ge;
        case Relator::Ge: return Relator::Le;
        case Relator::In:
        case Relator::Subset:
        case Relator::SubsetEq:
            return std::nullopt;
    }
    return std::nullopt;
}

std::string relator_lexeme(Relator r, std::string_view like) {
    const Family fam = family_of(like).value_or(Family::Long);
    const Spelling* exact = nullptr;
    const Spelling* ascii = nullptr;
    const Spelling* first = nullptr;
    for (const auto& s : kSpellings) {
        if (s.rel != r) continue;
        if (!first) first = &s;
        if (s.family == fam && !exact) exact = &s;
        if (s.family == Family::Ascii && !ascii) ascii = &s;
    }
    const Spelling* pick = exact ? exact : ascii ? ascii : first;
    return std::string(pick->lexeme);
}

std::optional<std::string> mirror_lexeme(std::string_view lexeme) {
    // relators outside the modelled set that still have an obvious mirror
    if (lexeme == "\\approx" || lexeme == "\\cong" || lexeme == "\\simeq" || lexeme == "\\perp" ||
        lexeme == "\\parallel")
        return std::string(lexeme);
    if (lexeme == "\\ll") return std::string("\\gg");
    if (lexeme == "\\gg") return std::string("\\ll");
    const auto r = classify_relator(lexeme);
    if (!r) return std::nullopt;
    const auto m = mirror(*r);
    if (!m) return std::nullopt;
    if (*m == *r) return std::string(lexeme);
    return relator_lexeme(*m, lexeme);
}

}  // namespace mathreuse::mathparse
