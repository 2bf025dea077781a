#include "mathreuse/obfuscate/generate.hpp"

#include <set>
#include <stdexcept>

#include "mathreuse/obfuscate/operators.hpp"
#include "mathreuse/util/rng.hpp"
#include "mathreuse/util/utf8.hpp"

namespace mathreuse::obfuscate {

using docmodel::CaseType;
using docmodel::OperatorSet;
using nlohmann::json;

namespace {

void allow_keys(const json& params, std::initializer_list<const char*> keys) {
    if (!params.is_object()) throw std::invalid_argument("params must be an object");
    for (const auto& [k, v] : params.items()) {
        bool ok = false;
        for (const char* a : keys) ok |= k == a;
        if (!ok) throw std::invalid_argument("unknown parameter '" + k + "'");
    }
}

double rate(const json& p, const char* key, double fallback) {
    const double r = p.value(key, fallback);
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument(std::string(key) + " must lie in [0, 1]");
    return r;
}

ParaphraseOptions paraphrase_options(const json& p) {
    allow_keys(p, {"mirror", "mirror_rate", "synonym_rate", "templates"});
    ParaphraseOptions o;
    o.mirror = p.value("mirror", true);
    o.mirror_rate = rate(p, "mirror_rate", 1.0);
    o.synonym_rate = rate(p, "synonym_rate", 1.0);
    o.templates = p.value("templates", true);
    return o;
}

InsertDeleteOptions insert_delete_options(const json& p) {
    allow_keys(p, {"mode", "unit", "target"});
    InsertDeleteOptions o;
    const std::string mode = p.value("mode", "insert");
    if (mode == "insert") o.mode = InsertDeleteMode::Insert;
    else if (mode == "delete") o.mode = InsertDeleteMode::Delete;
    else throw std::invalid_argument("mode must be insert or delete");
    const std::string unit = p.value("unit", "auto");
    if (unit == "auto") o.unit = InsertUnit::Auto;
    else if (unit == "step") o.unit = InsertUnit::Step;
    else if (unit == "filler") o.unit = InsertUnit::Filler;
    else throw std::invalid_argument("unit must be auto, step or filler");
    if (p.contains("target")) {
        const auto t = p.at("target").get<std::vector<std::size_t>>();
        if (t.size() != 2 || t[0] >= t[1]) throw std::invalid_argument("target must be [start, end] with start < end");
        o.target = Interval{t[0], t[1]};
    }
    return o;
}

SubstitutionPolicy substitution_policy(const json& p) {
    allow_keys(p, {"rate", "alphabet"});
    SubstitutionPolicy o;
    o.rate = rate(p, "rate", 1.0);
    o.alphabet = p.value("alphabet", o.alphabet);
    return o;
}

TmmtDirection tmmt_direction(const json& p) {
    allow_keys(p, {"direction"});
    const std::string d = p.value("direction", "auto");
    if (d == "auto") return TmmtDirection::Auto;
    if (d == "math_to_text") return TmmtDirection::MathToText;
    if (d == "text_to_math") return TmmtDirection::TextToMath;
    throw std::invalid_argument("direction must be auto, math_to_text or text_to_math");
}

PresentationOptions presentation_options(const json& p) {
    allow_keys(p, {"rename", "full_rename", "synonym_rate"});
    PresentationOptions o;
    o.rename = p.value("rename", IdentifierMap{});
    o.full_rename = p.value("full_rename", false);
    o.synonym_rate = rate(p, "synonym_rate", 0.0);
    if (o.full_rename && !o.rename.empty()) throw std::invalid_argument("rename and full_rename are exclusive");
    return o;
}

void check_fm(const json& p, const RuleLibrary& lib) {
    allow_keys(p, {"steps", "rules"});
    if (p.value("steps", 1) < 0) throw std::invalid_argument("steps must be >= 0");
    if (p.contains("rules")) lib.only(p.at("rules").get<std::vector<std::string>>());
}

void check_vs(const json& p) {
    allow_keys(p, {"entity_map"});
    if (p.contains("entity_map")) p.at("entity_map").get<std::map<std::string, std::string>>();
}

void check_params(const RecipeStep& s) {
    switch (s.op) {
        case ObfuscationOperator::P: paraphrase_options(s.params); break;
        case ObfuscationOperator::ID: insert_delete_options(s.params); break;
        case ObfuscationOperator::S: substitution_policy(s.params); break;
        case ObfuscationOperator::TMMT: tmmt_direction(s.params); break;
        case ObfuscationOperator::DP: presentation_options(s.params); break;
        case ObfuscationOperator::FM: check_fm(s.params, RuleLibrary::builtin()); break;
        case ObfuscationOperator::VS: check_vs(s.params); break;
    }
}

// Maps a paragraph through one step; insertions at either boundary and
// edits straddling a boundary are absorbed into the paragraph.
Interval map_paragraph(const ObfuscationTrace& t, Interval p) {
    auto map_start = [&](std::size_t a) {
        std::ptrdiff_t shift = 0;
        for (const auto& e : t.edits) {
            const auto delta = static_cast<std::ptrdiff_t>(e.replacement.length()) -
                               static_cast<std::ptrdiff_t>(e.original.length());
            if (e.original.empty()) {
                if (e.original.start < a) shift += delta;
                else if (e.original.start == a) return e.replacement.start;
                else break;
            } else if (e.original.end <= a) {
                shift += delta;
            } else if (e.original.start < a) {
                return e.replacement.start;
            } else {
                break;
            }
        }
        return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(a) + shift);
    };
    auto map_end = [&](std::size_t b) {
        std::ptrdiff_t shift = 0;
        for (const auto& e : t.edits) {
            const auto delta = static_cast<std::ptrdiff_t>(e.replacement.length()) -
                               static_cast<std::ptrdiff_t>(e.original.length());
            if (e.original.empty()) {
                if (e.original.start <= b) shift += delta;
                else break;
            } else if (e.original.end <= b) {
                shift += delta;
            } else if (e.original.start < b) {
                return e.replacement.end;
            } else {
                break;
            }
        }
        return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(b) + shift);
    };
    return {map_start(p.start), map_end(p.end)};
}

bool touches(const TraceEdit& e, Interval p) {
    if (e.original.empty()) return p.start <= e.original.start && e.original.start <= p.end;
    return e.original.overlaps(p);
}

CaseType combine(CaseType a, CaseType b) { return a == b ? a : CaseType::Both; }

}  // namespace

Recipe parse_recipe(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("recipe must be a JSON array");
    Recipe r;
    for (std::size_t i = 0; i < j.size(); ++i) {
        try {
            const json& s = j[i];
            if (!s.is_object()) throw std::invalid_argument("step must be an object");
            for (const auto& [k, v] : s.items())
                if (k != "op" && k != "params" && k != "seed") throw std::invalid_argument("unknown key '" + k + "'");
            RecipeStep step;
            const auto op = docmodel::parse_operator(s.at("op").get<std::string>());
            if (!op) throw std::invalid_argument("unknown operator " + s.at("op").get<std::string>());
            step.op = *op;
            step.params = s.value("params", json::object());
            step.seed = s.value("seed", std::uint64_t{0});
            check_params(step);
            r.push_back(std::move(step));
        } catch (const json::exception& e) {
            throw std::invalid_argument("recipe step " + std::to_string(i) + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("recipe step " + std::to_string(i) + ": " + e.what());
        }
    }
    return r;
}

json recipe_to_json(const Recipe& r) {
    json out = json::array();
    for (const auto& s : r)
        out.push_back(json{{"op", std::string(docmodel::to_string(s.op))}, {"params", s.params}, {"seed", s.seed}});
    return out;
}

OperatorResult apply_step(const Document& doc, const RecipeStep& step, std::uint64_t seed, const Resources& res) {
    const json& p = step.params;
    switch (step.op) {
        case ObfuscationOperator::P:
            return apply_paraphrase(doc, *res.lexicon, paraphrase_options(p), seed);
        case ObfuscationOperator::ID:
            return apply_insert_delete(doc, res.rules->with_tag("expansion"), *res.lexicon, insert_delete_options(p),
                                       seed);
        case ObfuscationOperator::S:
            return apply_substitution(doc, substitution_policy(p), seed);
        case ObfuscationOperator::TMMT:
            return apply_tmmt(doc, *res.lexicon, tmmt_direction(p), seed);
        case ObfuscationOperator::DP:
            return apply_presentation(doc, presentation_options(p), seed);
        case ObfuscationOperator::FM: {
            check_fm(p, *res.rules);
            const RuleLibrary lib =
                p.contains("rules") ? res.rules->only(p.at("rules").get<std::vector<std::string>>()) : *res.rules;
            return apply_formula_manipulation(doc, lib, p.value("steps", 1), seed);
        }
        case ObfuscationOperator::VS: {
            check_vs(p);
            const auto map = p.contains("entity_map") ? p.at("entity_map").get<std::map<std::string, std::string>>()
                                                      : res.lexicon->entity_map;
            return apply_variation_of_subject(doc, map);
        }
    }
    throw std::invalid_argument("unknown operator");
}

std::vector<Interval> paragraphs(std::u32string_view text) {
    std::vector<Interval> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        while (i < n && util::is_space(text[i])) ++i;
        if (i == n) break;
        const std::size_t start = i;
        std::size_t end = i;
        // Advance line by line until a blank line.
        while (i < n) {
            std::size_t eol = text.find(U'\n', i);
            if (eol == std::u32string_view::npos) eol = n;
            bool blank = true;
            for (std::size_t k = i; k < eol; ++k) blank &= util::is_space(text[k]);
            if (blank) break;
            end = eol;
            i = eol < n ? eol + 1 : n;
        }
        while (end > start && util::is_space(text[end - 1])) --end;
        out.push_back({start, end});
    }
    return out;
}

GeneratedPair generate_pair(const Document& source, const std::string& inspected_id, const Recipe& recipe,
                            std::uint64_t seed, const Resources& res) {
    if (recipe.empty()) throw std::invalid_argument("recipe must contain at least one step");
    GeneratedPair out;
    const auto paras = paragraphs(source.text);
    std::vector<Interval> cur(paras.begin(), paras.end());
    std::vector<OperatorSet> tags(paras.size());
    std::vector<char> gone(paras.size(), 0);

    Document doc = source;
    doc.id = inspected_id;
    for (std::size_t k = 0; k < recipe.size(); ++k) {
        const std::uint64_t step_seed = util::mix_seed(seed, util::mix_seed(recipe[k].seed, k));
        OperatorResult r = apply_step(doc, recipe[k], step_seed, res);
        for (std::size_t p = 0; p < cur.size(); ++p) {
            if (gone[p]) continue;  // later insertions at its position belong to the neighbours
            for (const auto& e : r.trace.edits)
                if (touches(e, cur[p])) {
                    tags[p].insert(recipe[k].op);
                    break;
                }
            cur[p] = map_paragraph(r.trace, cur[p]);
            gone[p] = cur[p].empty();
        }
        if (r.trace.identity())
            out.warnings.push_back("step " + std::to_string(k) + " (" + std::string(docmodel::to_string(recipe[k].op)) +
                                   ") changed nothing");
        out.traces.push_back(std::move(r.trace));
        doc = std::move(r.doc);
    }

    for (std::size_t p = 0; p < paras.size(); ++p) {
        if (tags[p].empty()) continue;
        if (cur[p].empty()) {
            out.warnings.push_back("paragraph " + std::to_string(p) + " was deleted entirely");
            continue;
        }
        docmodel::ReuseCase c;
        c.src = {source.id, paras[p].start, paras[p].end};
        c.insp = {inspected_id, cur[p].start, cur[p].end};
        c.ops = tags[p];
        c.case_type = combine(docmodel::classify_span(source, paras[p]), docmodel::classify_span(doc, cur[p]));
        out.cases.push_back(std::move(c));
    }
    if (out.cases.empty()) out.warnings.push_back("no step changed the document; no cases emitted");
    out.inspected = std::move(doc);
    return out;
}

}  // namespace mathreuse::obfuscate
