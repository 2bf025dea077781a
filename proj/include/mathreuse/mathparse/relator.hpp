#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace mathreuse::mathparse {

enum class Relator { Eq, Neq, Lt, Gt, Le, Ge, In, Subset, SubsetEq, Equiv, Sim };

// Classifies a relation lexeme ("\leq", "≤", "<", ...). Relation tokens outside
// the modelled set (\to, \approx, ...) return nullopt.
std::optional<Relator> classify_relator(std::string_view lexeme);

// Operand-swapping counterpart; nullopt for ∈, ⊂, ⊆.
std::optional<Relator> mirror(Relator r);

// The lexeme to print for `r` in the notation family of `like` (so "\le"
// mirrors to "\ge", "≤" to "≥", "\leq" to "\geq").
std::string relator_lexeme(Relator r, std::string_view like = {});

// Mirrors a lexeme directly. nullopt when the relator has no mirror or is not
// in the modelled set.
std::optional<std::string> mirror_lexeme(std::string_view lexeme);

}  // namespace mathreuse::mathparse
