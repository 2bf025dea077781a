#include "support/benchmark.hpp"

#include <algorithm>
#include <map>

#include "mathreuse/util/parallel.hpp"
#include "mathreuse/util/rng.hpp"
#include "support/doc_gen.hpp"

namespace mathreuse::testing {

namespace {

using docmodel::Document;
using docmodel::ReuseCase;

std::vector<std::string> name_pool() {
    std::vector<std::string> pool;
    const auto add = [&](const std::string& l) {
        pool.push_back(l);
        for (int d = 0; d < 100; ++d) pool.push_back(l + "_{" + std::to_string(d) + "}");
    };
    for (char c = 'a'; c <= 'z'; ++c)
        if (c != 'e' && c != 'i') add(std::string(1, c));  // e and i belong to the polar-form rule
    for (char c = 'A'; c <= 'Z'; ++c) add(std::string(1, c));
    for (const char* g : {"\\alpha", "\\beta", "\\gamma", "\\delta", "\\epsilon", "\\zeta", "\\eta", "\\theta",
                          "\\kappa", "\\lambda", "\\mu", "\\nu", "\\xi", "\\rho", "\\sigma", "\\tau", "\\psi",
                          "\\omega"})
        pool.emplace_back(g);
    return pool;
}

obfuscate::Recipe one_step(const char* json) { return obfuscate::parse_recipe(nlohmann::json::parse(json)); }

std::vector<ReuseCase> copy_cases(const Document& src, const std::string& insp_id) {
    std::vector<ReuseCase> out;
    for (const auto& p : obfuscate::paragraphs(src.text)) {
        ReuseCase c;
        c.src = {src.id, p.start, p.end};
        c.insp = {insp_id, p.start, p.end};
        c.case_type = docmodel::classify_span(src, p);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

std::vector<BenchRecipe> default_bench_recipes() {
    return {
        {"copy", {}},
        {"P", one_step(R"([{"op": "P"}])")},
        {"ID", one_step(R"([{"op": "ID"}])")},
        {"S", one_step(R"([{"op": "S"}])")},
        {"TMMT", one_step(R"([{"op": "TMMT"}])")},
        {"DP-full-rename", one_step(R"([{"op": "DP", "params": {"full_rename": true}}])")},
        {"FM", one_step(R"([{"op": "FM"}])")},
        {"VS", one_step(R"([{"op": "VS"}])")},
    };
}

Benchmark build_benchmark(const BenchOptions& opts, const std::vector<BenchRecipe>& recipes) {
    const auto pool = name_pool();
    util::Rng rng(opts.seed);
    Benchmark b;
    b.collection.reserve(opts.documents);
    for (std::size_t i = 0; i < opts.documents; ++i) {
        DocGenOptions g{4, 4, {}};
        for (std::size_t k = 0; k < 10; ++k) g.identifiers.push_back(pool[rng.below(pool.size())]);
        char id[16];
        std::snprintf(id, sizeof id, "doc%04zu", i);
        b.collection.push_back(docmodel::segment_document(id, random_document(rng, obfuscate::Lexicon::builtin(), g)));
    }

    std::size_t cursor = 0;
    for (const auto& r : recipes) {
        std::size_t planted = 0;
        for (std::size_t tries = 0; planted < opts.pairs_per_recipe && tries < opts.documents; ++tries) {
            const Document& src = b.collection[cursor++ % b.collection.size()];
            const std::string insp_id = src.id + "~" + r.name;
            PlantedPair p{r.name, src.id, {}, {}};
            if (r.steps.empty()) {
                p.inspected = src;
                p.inspected.id = insp_id;
                p.cases = copy_cases(src, insp_id);
            } else {
                auto g = obfuscate::generate_pair(src, insp_id, r.steps, util::mix_seed(opts.seed, cursor));
                p.inspected = std::move(g.inspected);
                p.cases = std::move(g.cases);
            }
            if (p.cases.empty()) continue;
            b.planted.push_back(std::move(p));
            ++planted;
        }
    }
    return b;
}

std::vector<RecipeOutcome> evaluate_benchmark(const Benchmark& bench, const detect::DetectorConfig& config) {
    std::vector<const Document*> docs;
    std::map<std::string, const Document*> by_id;
    for (const auto& d : bench.collection) {
        docs.push_back(&d);
        by_id[d.id] = &d;
    }
    const detect::Index index(docs, config);

    std::vector<std::vector<detect::Detection>> found(bench.planted.size());
    std::vector<char> hit(bench.planted.size(), 0);
    util::parallel_for(bench.planted.size(), [&](std::size_t i) {
        const auto& p = bench.planted[i];
        const auto top = detect::retrieve_topk(p.inspected, index, config.k, 1);
        for (const auto& r : top.ranked) {
            if (r.doc_id == p.source_id) hit[i] = 1;
            for (auto& d : detect::detect_pair(p.inspected, *by_id.at(r.doc_id), config))
                found[i].push_back(std::move(d));
        }
    });

    std::vector<RecipeOutcome> out;
    std::map<std::string, std::size_t> slot;
    std::map<std::string, std::pair<std::vector<ReuseCase>, std::vector<detect::Detection>>> groups;
    for (std::size_t i = 0; i < bench.planted.size(); ++i) {
        const auto& p = bench.planted[i];
        if (!slot.count(p.recipe)) {
            slot[p.recipe] = out.size();
            out.push_back({p.recipe, 0, {}, 0});
        }
        auto& o = out[slot[p.recipe]];
        ++o.pairs;
        o.source_in_topk += hit[i];
        auto& [truth, dets] = groups[p.recipe];
        truth.insert(truth.end(), p.cases.begin(), p.cases.end());
        dets.insert(dets.end(), found[i].begin(), found[i].end());
    }
    for (auto& o : out) o.scores = evalmetrics::score(groups[o.recipe].first, groups[o.recipe].second);
    return out;
}

}  // namespace mathreuse::testing
