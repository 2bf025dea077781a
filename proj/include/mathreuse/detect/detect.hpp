#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mathreuse/docmodel/document.hpp"
#include "mathreuse/docmodel/reuse.hpp"
#include "mathreuse/kernels/kernels.hpp"

namespace mathreuse::detect {

using docmodel::Document;
using util::Interval;

// ---- identifier streams ----------------------------------------------------

struct IdentItem {
    std::string name;
    Interval span;  // leaf span in document coordinates
};

struct IdentStream {
    std::string doc_id;
    std::vector<IdentItem> items;

    std::size_t size() const { return items.size(); }
};

// Identifier leaves of all parsed math runs in document order.
IdentStream ident_stream(const Document& doc);

// Dense ids for identifier names, shared by the streams being compared.
class SymbolTable {
public:
    std::uint32_t intern(std::string_view name);
    std::optional<std::uint32_t> find(std::string_view name) const;
    std::size_t size() const { return ids_.size(); }

private:
    std::unordered_map<std::string, std::uint32_t> ids_;
};

std::vector<std::uint32_t> encode(const IdentStream& s, SymbolTable& table);

// ---- LCIS ------------------------------------------------------------------

struct LcisResult {
    std::size_t length = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (source index, inspected index)
};

// Longest common subsequence of the name sequences. Among the optimal
// alignments the one whose source indices are lexicographically smallest is
// returned, ties broken the same way on the inspected side.
LcisResult lcis(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);
LcisResult lcis(const IdentStream& a, const IdentStream& b);

// ---- GIT -------------------------------------------------------------------

struct Tile {
    Interval src_range;   // item indices into the source stream
    Interval insp_range;  // item indices into the inspected stream
    std::size_t length = 0;
    friend bool operator==(const Tile&, const Tile&) = default;
};

// Greedy string tiling: repeatedly marks the longest unmarked common
// substring of length >= min_tile (ties: smallest source start, then smallest
// inspected start). Sorted by source start.
std::vector<Tile> git(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, std::size_t min_tile,
                      const kernels::KernelSet& k = kernels::active_kernels());
std::vector<Tile> git(const IdentStream& a, const IdentStream& b, std::size_t min_tile);

std::size_t total_length(const std::vector<Tile>& tiles);

// ---- detections --------------------------------------------------------------

struct Detection {
    docmodel::Span src;
    docmodel::Span insp;
    double score = 0.0;
    std::string detector;
    friend bool operator==(const Detection&, const Detection&) = default;
};

// Chains tiles in source order while both character gaps stay <= gap; each
// chain becomes one detection over the leaf-span hulls, scored by its total
// tile length.
std::vector<Detection> tiles_to_detections(const std::vector<Tile>& tiles, const IdentStream& a,
                                           const IdentStream& b, std::size_t gap,
                                           const std::string& detector = "git");

// ---- fingerprint baseline ------------------------------------------------------

struct FpToken {
    std::string text;
    Interval span;
};

// Lower-cased words of the text runs; a math run contributes the leaves of
// its normalized tree, each spanning the whole run.
std::vector<FpToken> fingerprint_tokens(const Document& doc);

// Hashes of the word n-grams, in token order.
std::vector<std::uint64_t> ngram_hashes(const std::vector<FpToken>& tokens, std::size_t n);

// Maximal diagonal runs of >= threshold consecutive shared n-grams, merged
// when they overlap on both sides. `a` is the source. Detections are
// labelled "fingerprint-baseline".
std::vector<Detection> ngram_fingerprint_detect(const Document& a, const Document& b, std::size_t n,
                                                std::size_t threshold);

// ---- configuration, pair detection, retrieval ----------------------------------

enum class DetectorKind { Lcis, Git, Fingerprint, Combined };

std::string_view to_string(DetectorKind d);

struct DetectorConfig {
    DetectorKind detector = DetectorKind::Combined;
    std::size_t min_tile = 3;
    std::size_t gap = 30;
    std::size_t ngram = 4;
    std::size_t threshold = 3;
    std::size_t k = 10;

    // Unknown keys and out-of-range values throw std::invalid_argument.
    static DetectorConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

// Union of the configured detectors' output with detections contained (on
// both sides) in another one removed, sorted by source then inspected start.
std::vector<Detection> detect_pair(const Document& insp, const Document& src, const DetectorConfig& config = {});

// Precomputed features of a document collection for repeated scoring.
class Index {
public:
    Index(std::vector<const Document*> docs, const DetectorConfig& config);

    struct Features {
        std::string id;
        std::vector<std::uint32_t> symbols;
        std::vector<std::uint64_t> grams;  // sorted, distinct
    };

    Features featurize(const Document& doc) const;
    double score(const Features& query, std::size_t i) const;
    std::size_t size() const { return docs_.size(); }
    const Features& features(std::size_t i) const { return docs_[i]; }
    const DetectorConfig& config() const { return config_; }

private:
    DetectorConfig config_;
    SymbolTable table_;
    std::vector<Features> docs_;
};

struct Ranked {
    std::string doc_id;
    double score = 0.0;
    friend bool operator==(const Ranked&, const Ranked&) = default;
};

struct Retrieval {
    std::vector<Ranked> ranked;
    bool truncated = false;  // k exceeded the collection size
};

// Scores every indexed document against the query (the query's own id is
// skipped) and keeps the best k; ties go to the smaller id. Scoring is spread
// over `workers` threads.
Retrieval retrieve_topk(const Document& query, const Index& index, std::size_t k,
                        std::size_t workers = 0);
Retrieval retrieve_topk(const Document& query, const std::vector<Document>& collection, std::size_t k,
                        DetectorKind scorer, std::size_t workers = 0);

}  // namespace mathreuse::detect
