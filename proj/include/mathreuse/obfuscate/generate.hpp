#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "mathreuse/docmodel/reuse.hpp"
#include "mathreuse/obfuscate/edits.hpp"
#include "mathreuse/obfuscate/resources.hpp"

namespace mathreuse::obfuscate {

struct RecipeStep {
    ObfuscationOperator op = ObfuscationOperator::P;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;
};

using Recipe = std::vector<RecipeStep>;

// Parses [{"op": "P", "params": {...}, "seed": 1}, ...]. Throws
// std::invalid_argument naming the offending step index.
Recipe parse_recipe(const nlohmann::json& j);
nlohmann::json recipe_to_json(const Recipe& r);

struct Resources {
    const Lexicon* lexicon = &Lexicon::builtin();
    const RuleLibrary* rules = &RuleLibrary::builtin();
};

struct GeneratedPair {
    Document inspected;
    std::vector<docmodel::ReuseCase> cases;
    std::vector<ObfuscationTrace> traces;
    std::vector<std::string> warnings;
};

// Applies the steps in order and labels every source paragraph touched by
// some step. Paragraphs are separated by blank lines. Throws
// std::invalid_argument for an empty recipe or invalid parameters.
GeneratedPair generate_pair(const Document& source, const std::string& inspected_id, const Recipe& recipe,
                            std::uint64_t seed, const Resources& res = {});

// Runs one step on a document.
OperatorResult apply_step(const Document& doc, const RecipeStep& step, std::uint64_t seed, const Resources& res = {});

// Paragraph intervals of a text: maximal stretches separated by lines that
// are blank, trimmed of surrounding whitespace.
std::vector<Interval> paragraphs(std::u32string_view text);

}  // namespace mathreuse::obfuscate
