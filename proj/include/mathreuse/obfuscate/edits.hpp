#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mathreuse/docmodel/document.hpp"
#include "mathreuse/docmodel/reuse.hpp"

namespace mathreuse::obfuscate {

using docmodel::Document;
using docmodel::ObfuscationOperator;
using util::Interval;

// Replace `original` (input coordinates) with `replacement`. An empty
// original interval is an insertion.
struct Edit {
    Interval original;
    std::u32string replacement;
    std::string entry;  // rule or lexicon entry responsible
};

// An applied edit: `original` in input coordinates, `replacement` in output
// coordinates.
struct TraceEdit {
    Interval original;
    Interval replacement;
    std::string entry;
    friend bool operator==(const TraceEdit&, const TraceEdit&) = default;
};

struct ObfuscationTrace {
    ObfuscationOperator op = ObfuscationOperator::P;
    std::vector<TraceEdit> edits;  // sorted, non-overlapping in the input
    std::uint64_t seed = 0;
    std::vector<std::string> skipped;  // sites considered but not applicable

    bool identity() const { return edits.empty(); }
};

struct OperatorResult {
    Document doc;
    ObfuscationTrace trace;
};

// Applies non-overlapping edits and re-segments the result under the same
// document id. Throws std::invalid_argument on overlapping edits.
OperatorResult apply_edits(const Document& doc, std::vector<Edit> edits, ObfuscationOperator op,
                           std::uint64_t seed);

// Maps an input offset through a trace to output coordinates. Offsets inside
// a replaced interval map to the start of its replacement.
std::size_t map_offset(const ObfuscationTrace& trace, std::size_t offset);

}  // namespace mathreuse::obfuscate
