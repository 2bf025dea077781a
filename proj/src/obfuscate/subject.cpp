#include <algorithm>

#include "mathreuse/obfuscate/operators.hpp"
#include "mathreuse/util/utf8.hpp"
#include "text_match.hpp"

namespace mathreuse::obfuscate {

using namespace detail;

namespace {

struct Entity {
    std::u32string phrase;
    std::string key;
};

std::vector<Entity> by_length(const std::vector<std::string>& phrases) {
    std::vector<Entity> out;
    for (const auto& p : phrases) out.push_back({u32(p), p});
    std::stable_sort(out.begin(), out.end(),
                     [](const Entity& a, const Entity& b) { return a.phrase.size() > b.phrase.size(); });
    return out;
}

bool word_start(const Document& doc, const std::vector<bool>& mask, std::size_t pos) {
    return pos == 0 || !mask[pos - 1] || !is_word_char(doc.text[pos - 1]);
}

}  // namespace

OperatorResult apply_variation_of_subject(const Document& doc, const std::map<std::string, std::string>& entity_map) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : entity_map) {
        if (k.empty()) throw OperatorError("empty entity");
        keys.push_back(k);
    }
    for (const auto& [k, v] : entity_map)
        if (entity_map.count(v) && v != k) throw OperatorError("entity " + v + " is both a key and a value");

    const auto mask = text_mask(doc);
    const auto entities = by_length(keys);
    std::vector<Edit> edits;
    for (std::size_t pos = 0; pos < doc.length(); ++pos) {
        if (!mask[pos] || !word_start(doc, mask, pos)) continue;
        for (const auto& e : entities) {
            const auto end = match_phrase(doc, mask, pos, e.phrase);
            if (!end) continue;
            edits.push_back({{pos, *end}, u32(entity_map.at(e.key)), "vs:" + e.key});
            pos = *end - 1;
            break;
        }
    }
    for (const auto& run : doc.runs) {
        if (!run.is_math() || !run.tree) continue;
        for (const ExprNode* leaf : mathparse::identifier_leaves(*run.tree)) {
            const auto it = entity_map.find(leaf->text);
            if (it == entity_map.end()) continue;
            edits.push_back({leaf->span, guard_splice(doc.text, leaf->span, u32(it->second)), "vs:" + it->first});
        }
    }
    return apply_edits(doc, std::move(edits), ObfuscationOperator::VS, 0);
}

std::size_t entity_token_count(const Document& doc, const std::map<std::string, std::string>& entity_map) {
    std::vector<std::string> phrases;
    for (const auto& [k, v] : entity_map) {
        phrases.push_back(k);
        phrases.push_back(v);
    }
    const auto entities = by_length(phrases);
    const auto mask = text_mask(doc);
    // Entity occurrences count once and act as separators; the remaining
    // prose is split on whitespace.
    std::size_t count = 0;
    std::u32string rest(doc.length(), U' ');
    for (std::size_t pos = 0; pos < doc.length(); ++pos) {
        if (!mask[pos]) continue;
        if (word_start(doc, mask, pos)) {
            std::optional<std::size_t> end;
            for (const auto& e : entities)
                if ((end = match_phrase(doc, mask, pos, e.phrase))) break;
            if (end) {
                ++count;
                pos = *end - 1;
                continue;
            }
        }
        rest[pos] = doc.text[pos];
    }
    bool in_token = false;
    for (char32_t c : rest) {
        const bool space = util::is_space(c);
        if (!space && !in_token) ++count;
        in_token = !space;
    }
    for (const auto& run : doc.runs)
        if (run.is_math() && run.tree) count += mathparse::identifier_leaf_count(*run.tree);
    return count;
}

}  // namespace mathreuse::obfuscate
