#include "mathreuse/detect/detect.hpp"
#include "mathreuse/mathparse/structure.hpp"

namespace mathreuse::detect {

IdentStream ident_stream(const Document& doc) {
    IdentStream s{doc.id, {}};
    for (const auto* run : doc.math_runs()) {
        if (!run->tree) continue;
        for (const auto* leaf : mathparse::identifier_leaves(*run->tree)) s.items.push_back({leaf->text, leaf->span});
    }
    return s;
}

std::uint32_t SymbolTable::intern(std::string_view name) {
    const auto [it, fresh] = ids_.try_emplace(std::string(name), static_cast<std::uint32_t>(ids_.size()));
    return it->second;
}

std::optional<std::uint32_t> SymbolTable::find(std::string_view name) const {
    const auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::uint32_t> encode(const IdentStream& s, SymbolTable& table) {
    std::vector<std::uint32_t> out;
    out.reserve(s.items.size());
    for (const auto& item : s.items) out.push_back(table.intern(item.name));
    return out;
}

}  // namespace mathreuse::detect
