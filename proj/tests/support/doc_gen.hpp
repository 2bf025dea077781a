#pragma once

#include <string>
#include <vector>

#include "mathreuse/obfuscate/resources.hpp"
#include "mathreuse/util/rng.hpp"

namespace mathreuse::testing {

struct DocGenOptions {
    int paragraphs = 3;
    int sentences = 3;  // per paragraph
    std::vector<std::string> identifiers;  // formula and template names; empty = a small fixed set
};

// Prose paragraphs mixing plain sentences, inline and display formulae,
// clause-template sentences, lexicon sentences for TMMT, filler sentences and
// entity names, separated by blank lines.
std::string random_document(util::Rng& rng, const obfuscate::Lexicon& lex, const DocGenOptions& opts = {});

}  // namespace mathreuse::testing
