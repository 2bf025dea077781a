#include "mathreuse/obfuscate/edits.hpp"

#include <algorithm>
#include <stdexcept>

namespace mathreuse::obfuscate {

OperatorResult apply_edits(const Document& doc, std::vector<Edit> edits, ObfuscationOperator op, std::uint64_t seed) {
    std::stable_sort(edits.begin(), edits.end(),
                     [](const Edit& a, const Edit& b) { return a.original.start < b.original.start; });
    OperatorResult out;
    out.trace.op = op;
    out.trace.seed = seed;
    std::u32string text;
    text.reserve(doc.text.size());
    std::size_t pos = 0;
    for (const auto& e : edits) {
        if (e.original.start < pos || e.original.end < e.original.start || e.original.end > doc.text.size())
            throw std::invalid_argument("overlapping or out-of-range edit (" + e.entry + ")");
        if (e.original.empty() && e.replacement.empty()) continue;
        if (doc.text.compare(e.original.start, e.original.length(), e.replacement) == 0) continue;  // no-op
        text.append(doc.text, pos, e.original.start - pos);
        const std::size_t at = text.size();
        text += e.replacement;
        out.trace.edits.push_back({e.original, {at, text.size()}, e.entry});
        pos = e.original.end;
    }
    text.append(doc.text, pos, std::u32string::npos);
    out.doc = docmodel::segment_document(doc.id, std::move(text));
    return out;
}

std::size_t map_offset(const ObfuscationTrace& trace, std::size_t offset) {
    std::ptrdiff_t shift = 0;
    for (const auto& e : trace.edits) {
        if (offset < e.original.start) break;
        if (offset < e.original.end) return e.replacement.start;
        shift += static_cast<std::ptrdiff_t>(e.replacement.length()) - static_cast<std::ptrdiff_t>(e.original.length());
    }
    return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(offset) + shift);
}

}  // namespace mathreuse::obfuscate
