#include <algorithm>
#include <stdexcept>

#include "mathreuse/detect/detect.hpp"

namespace mathreuse::detect {

std::string_view to_string(DetectorKind d) {
    switch (d) {
        case DetectorKind::Lcis: return "lcis";
        case DetectorKind::Git: return "git";
        case DetectorKind::Fingerprint: return "fingerprint";
        case DetectorKind::Combined: return "combined";
    }
    return "?";
}

namespace {

std::size_t positive(const nlohmann::json& j, const char* key, std::size_t min) {
    if (!j.is_number_integer() || j.get<long long>() < static_cast<long long>(min))
        throw std::invalid_argument(std::string("detector config: '") + key + "' must be an integer >= " +
                                    std::to_string(min));
    return j.get<std::size_t>();
}

}  // namespace

DetectorConfig DetectorConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("detector config: expected an object");
    DetectorConfig c;
    for (const auto& [key, v] : j.items()) {
        if (key == "detector") {
            const std::string name = v.is_string() ? v.get<std::string>() : "";
            if (name == "lcis") c.detector = DetectorKind::Lcis;
            else if (name == "git") c.detector = DetectorKind::Git;
            else if (name == "fingerprint") c.detector = DetectorKind::Fingerprint;
            else if (name == "combined") c.detector = DetectorKind::Combined;
            else throw std::invalid_argument("detector config: unknown detector '" + v.dump() + "'");
        } else if (key == "min_tile") {
            c.min_tile = positive(v, "min_tile", 1);
        } else if (key == "gap") {
            c.gap = positive(v, "gap", 0);
        } else if (key == "ngram") {
            c.ngram = positive(v, "ngram", 2);
        } else if (key == "threshold") {
            c.threshold = positive(v, "threshold", 1);
        } else if (key == "k") {
            c.k = positive(v, "k", 1);
        } else {
            throw std::invalid_argument("detector config: unknown key '" + key + "'");
        }
    }
    return c;
}

nlohmann::json DetectorConfig::to_json() const {
    return {{"detector", std::string(to_string(detector))},
            {"min_tile", min_tile},
            {"gap", gap},
            {"ngram", ngram},
            {"threshold", threshold},
            {"k", k}};
}

namespace {

bool contains(const Detection& outer, const Detection& inner) {
    return outer.src.interval().contains(inner.src.interval()) && outer.insp.interval().contains(inner.insp.interval());
}

std::vector<Detection> lcis_detections(const IdentStream& s, const IdentStream& i, const DetectorConfig& c) {
    const LcisResult r = lcis(s, i);
    std::vector<Tile> unit;
    for (const auto& [x, y] : r.pairs) unit.push_back({{x, x + 1}, {y, y + 1}, 1});
    std::vector<Detection> out;
    for (auto& d : tiles_to_detections(unit, s, i, c.gap, "lcis"))
        if (d.score >= static_cast<double>(c.min_tile)) out.push_back(std::move(d));
    return out;
}

}  // namespace

std::vector<Detection> detect_pair(const Document& insp, const Document& src, const DetectorConfig& config) {
    std::vector<Detection> all;
    const bool ids = config.detector != DetectorKind::Fingerprint;
    const IdentStream s = ids ? ident_stream(src) : IdentStream{};
    const IdentStream i = ids ? ident_stream(insp) : IdentStream{};
    if (config.detector == DetectorKind::Lcis) all = lcis_detections(s, i, config);
    if (config.detector == DetectorKind::Git || config.detector == DetectorKind::Combined)
        all = tiles_to_detections(git(s, i, config.min_tile), s, i, config.gap, "git");
    if (config.detector == DetectorKind::Fingerprint || config.detector == DetectorKind::Combined)
        for (auto& d : ngram_fingerprint_detect(src, insp, config.ngram, config.threshold)) all.push_back(std::move(d));

    std::vector<Detection> kept;
    for (std::size_t x = 0; x < all.size(); ++x) {
        bool covered = false;
        for (std::size_t y = 0; y < all.size() && !covered; ++y) {
            if (x == y || !contains(all[y], all[x])) continue;
            // Equal spans: keep the earlier one.
            covered = !contains(all[x], all[y]) || y < x;
        }
        if (!covered) kept.push_back(all[x]);
    }
    std::sort(kept.begin(), kept.end(), [](const Detection& a, const Detection& b) {
        return std::tuple(a.src.start, a.insp.start, a.src.end, a.insp.end) <
               std::tuple(b.src.start, b.insp.start, b.src.end, b.insp.end);
    });
    return kept;
}

}  // namespace mathreuse::detect
