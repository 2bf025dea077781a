#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mathreuse/mathparse/normalize.hpp"
#include "mathreuse/mathparse/structure.hpp"
#include "mathreuse/obfuscate/edits.hpp"
#include "mathreuse/obfuscate/resources.hpp"

namespace mathreuse::obfuscate {

using mathparse::IdentifierMap;

// Raised for invalid operator parameters: non-bijective renames, ambiguous
// entity maps, exhausted fresh names, unresolvable substitutions.
class OperatorError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---- P -------------------------------------------------------------------

// Swaps the operands of every relator; nullopt when some relator has no
// mirror (∈, ⊂, ⊆) or the node is not a Relation.
std::optional<ExprNode> mirror_relation(const ExprNode& rel);

struct ParaphraseOptions {
    bool mirror = true;
    double mirror_rate = 1.0;
    double synonym_rate = 1.0;
    bool templates = true;
};

// Clause-template swaps and word-synonym swaps in text; in math only relator
// mirroring. Every maximal expression survives unchanged.
OperatorResult apply_paraphrase(const Document& doc, const Lexicon& lexicon, const ParaphraseOptions& opts,
                                std::uint64_t seed);

// ---- ID ------------------------------------------------------------------

enum class InsertDeleteMode { Insert, Delete };

// Kind of unit to insert or delete. Auto prefers derivation steps and falls
// back to filler sentences.
enum class InsertUnit { Auto, Step, Filler };

struct InsertDeleteOptions {
    InsertDeleteMode mode = InsertDeleteMode::Insert;
    InsertUnit unit = InsertUnit::Auto;
    // Restricts deletion to exactly this interval (e.g. a segment produced by
    // an earlier insertion). Ignored for insertion.
    std::optional<Interval> target;
};

// Insert: a derived middle step "= M" after an operand of a relation (M is
// one expansion-rule rewrite of that operand), or else a filler sentence.
// Delete: an equality middle step of a chain, or a filler sentence.
OperatorResult apply_insert_delete(const Document& doc, const RuleLibrary& expansions, const Lexicon& lexicon,
                                   const InsertDeleteOptions& opts, std::uint64_t seed);

// ---- S -------------------------------------------------------------------

struct SubstitutionClause {
    ExprNode head;  // A(x, y) or a bare identifier A
    ExprNode body;
};

struct SubstitutionPolicy {
    std::string alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
    double rate = 1.0;  // chance of substituting each eligible operand; at least one is taken
};

struct SubstitutionResult {
    ExprNode formula;
    std::vector<SubstitutionClause> clauses;
};

// Replaces maximal expressions with ≥2 leaves by fresh heads. Throws
// OperatorError when no eligible expression exists or names run out.
SubstitutionResult apply_substitution(const ExprNode& formula, const SubstitutionPolicy& policy, std::uint64_t seed);

// Expands clause heads until none remain. Throws OperatorError on cyclic
// definitions, duplicate clauses, and applications of a single capital letter
// (the shape of a generated head) that have no clause.
ExprNode resolve_substitutions(const ExprNode& formula, const std::vector<SubstitutionClause>& clauses);

// Document form: a seed-chosen eligible formula becomes "$A(x)=B(y),$ where
// $A(x)=...$ and $B(y)=...$." Identity when no formula is eligible.
OperatorResult apply_substitution(const Document& doc, const SubstitutionPolicy& policy, std::uint64_t seed);

// ---- TMMT ----------------------------------------------------------------

enum class TmmtDirection { Auto, MathToText, TextToMath };

// Replaces every sentence matching a lexicon entry by its formula and/or
// every formula matching an entry by its sentence, depending on `direction`.
// Identity when nothing matches.
OperatorResult apply_tmmt(const Document& doc, const Lexicon& lexicon, TmmtDirection direction, std::uint64_t seed);

// Formula form of the two directions on a single entry.
std::optional<std::string> math_to_text(const ExprNode& formula, const MathTextEntry& entry);
std::optional<ExprNode> text_to_math(std::string_view sentence, const MathTextEntry& entry);

// ---- DP ------------------------------------------------------------------

// Throws OperatorError unless `rename` is injective and no image collides
// with an identifier of `e` that is left unmapped.
void validate_rename(const ExprNode& e, const IdentifierMap& rename);

struct PresentationResult {
    ExprNode formula;
    std::vector<std::string> swaps;  // names of the synonym swaps applied
};

// Renames identifiers and applies synonym swaps drawn from the reverse of
// the canonicalization table (1 → 1.0, a/b → \frac{a}{b}, √x → x^{1/2},
// juxtaposition → \cdot).
PresentationResult apply_presentation(const ExprNode& e, const IdentifierMap& rename, double synonym_rate,
                                      std::uint64_t seed);

struct PresentationOptions {
    IdentifierMap rename;
    bool full_rename = false;  // rename every identifier to unused names
    double synonym_rate = 0.0;
};

OperatorResult apply_presentation(const Document& doc, const PresentationOptions& opts, std::uint64_t seed);

// Maps every identifier of the document to a fresh name absent from it.
IdentifierMap full_rename_map(const Document& doc);

// ---- FM ------------------------------------------------------------------

struct FmStep {
    std::string rule;
    ExprNode before;
    ExprNode after;
};

struct FmResult {
    ExprNode expr;
    std::vector<FmStep> derivation;
};

// Applies up to `steps` rewrites at seed-chosen sites. Numerically checkable
// rewrites that fail the check at sampled assignments are rejected.
FmResult apply_formula_manipulation(const ExprNode& expr, const RuleLibrary& rules, int steps, std::uint64_t seed);

// Numeric comparison used by the check: values of expressions, or adjacent
// differences of relations, at random assignments in [0.5, 2]. Returns
// nullopt when either side is not evaluable.
std::optional<bool> numerically_equivalent(const ExprNode& before, const ExprNode& after, double residual_scale,
                                           std::uint64_t seed, int samples = 8);

OperatorResult apply_formula_manipulation(const Document& doc, const RuleLibrary& rules, int steps,
                                          std::uint64_t seed);

// ---- VS ------------------------------------------------------------------

// Simultaneous whole-word replacement in text and identifier replacement in
// formulae. Throws OperatorError when a key also occurs as a value.
OperatorResult apply_variation_of_subject(const Document& doc, const std::map<std::string, std::string>& entity_map);

// Token count of a document: whitespace-separated words of the text runs,
// where an occurrence of a map phrase (key or value) is one token, plus the
// identifier leaves of the formulae.
std::size_t entity_token_count(const Document& doc, const std::map<std::string, std::string>& entity_map);

}  // namespace mathreuse::obfuscate
