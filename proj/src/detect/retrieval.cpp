#include <algorithm>
#include <cmath>
#include <numeric>

#include "mathreuse/detect/detect.hpp"
#include "mathreuse/util/parallel.hpp"

namespace mathreuse::detect {

namespace {

bool uses_grams(DetectorKind d) { return d == DetectorKind::Fingerprint || d == DetectorKind::Combined; }

std::vector<std::uint64_t> distinct_grams(const Document& doc, std::size_t n) {
    auto g = ngram_hashes(fingerprint_tokens(doc), n);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

std::size_t shared(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) {
    std::size_t n = 0;
    for (auto i = x.begin(), j = y.begin(); i != x.end() && j != y.end();) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

}  // namespace

Index::Index(std::vector<const Document*> docs, const DetectorConfig& config) : config_(config) {
    docs_.reserve(docs.size());
    for (const Document* d : docs) {
        Features f{d->id, encode(ident_stream(*d), table_), {}};
        if (uses_grams(config_.detector)) f.grams = distinct_grams(*d, config_.ngram);
        docs_.push_back(std::move(f));
    }
}

Index::Features Index::featurize(const Document& doc) const {
    Features f{doc.id, {}, {}};
    // Names absent from the collection get ids past the table; they can
    // never match, but repeats within the query stay equal.
    SymbolTable unseen;
    for (const auto& item : ident_stream(doc).items) {
        const auto id = table_.find(item.name);
        f.symbols.push_back(id ? *id : static_cast<std::uint32_t>(table_.size()) + unseen.intern(item.name));
    }
    if (uses_grams(config_.detector)) f.grams = distinct_grams(doc, config_.ngram);
    return f;
}

double Index::score(const Features& q, std::size_t i) const {
    const Features& d = docs_[i];
    switch (config_.detector) {
        case DetectorKind::Lcis:
            return static_cast<double>(kernels::lcs_length(d.symbols, q.symbols));
        case DetectorKind::Git:
            return static_cast<double>(total_length(git(d.symbols, q.symbols, config_.min_tile)));
        case DetectorKind::Fingerprint:
            return static_cast<double>(shared(d.grams, q.grams));
        case DetectorKind::Combined:
            return static_cast<double>(total_length(git(d.symbols, q.symbols, config_.min_tile)) +
                                       shared(d.grams, q.grams));
    }
    return 0.0;
}

Retrieval retrieve_topk(const Document& query, const Index& index, std::size_t k, std::size_t workers) {
    if (k < 1) throw std::invalid_argument("retrieve_topk: k must be >= 1");
    if (index.size() == 0) throw std::invalid_argument("retrieve_topk: empty collection");
    const Index::Features q = index.featurize(query);
    std::vector<double> scores(index.size(), NAN);
    util::parallel_for(
        index.size(),
        [&](std::size_t i) {
            if (index.features(i).id != query.id) scores[i] = index.score(q, i);
        },
        workers == 0 ? util::worker_count() : workers);

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (!std::isnan(scores[i])) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (scores[x] != scores[y]) return scores[x] > scores[y];
        return index.features(x).id < index.features(y).id;
    });
    Retrieval r;
    r.truncated = k > order.size();
    order.resize(std::min(k, order.size()));
    for (std::size_t i : order) r.ranked.push_back({index.features(i).id, scores[i]});
    return r;
}

Retrieval retrieve_topk(const Document& query, const std::vector<Document>& collection, std::size_t k,
                        DetectorKind scorer, std::size_t workers) {
    std::vector<const Document*> docs;
    for (const auto& d : collection) docs.push_back(&d);
    DetectorConfig c;
    c.detector = scorer;
    return retrieve_topk(query, Index(std::move(docs), c), k, workers);
}

}  // namespace mathreuse::detect
