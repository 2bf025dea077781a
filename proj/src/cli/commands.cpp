#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mathreuse/cli/cli.hpp"
#include "mathreuse/docmodel/corpus.hpp"
#include "mathreuse/evalmetrics/metrics.hpp"
#include "mathreuse/mathparse/parser.hpp"
#include "mathreuse/mathparse/token.hpp"
#include "mathreuse/obfuscate/generate.hpp"
#include "mathreuse/util/hash.hpp"
#include "mathreuse/util/parallel.hpp"
#include "mathreuse/util/rng.hpp"
#include "mathreuse/util/utf8.hpp"

namespace mathreuse::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

// Input problems (missing files, bad recipes, bad configs) end with exit 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + p.string() + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json read_json(const fs::path& p) {
    try {
        return json::parse(read_file(p));
    } catch (const json::parse_error& e) {
        throw UsageError("'" + p.string() + "' is not valid JSON: " + e.what());
    }
}

docmodel::Corpus load(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw UsageError("'" + dir.string() + "' is not a directory");
    return docmodel::load_corpus(dir);
}

void write_lines(const fs::path& p, const std::vector<std::string>& lines) {
    std::ofstream o(p, std::ios::binary);
    for (const auto& l : lines) o << l << '\n';
}

// ---- parse -------------------------------------------------------------------

int cmd_parse(const std::string& file, bool as_json, std::ostream& out, std::ostream& err) {
    if (!fs::is_regular_file(file)) {
        err << "error: no such file '" << file << "'\n";
        return kUsageError;
    }
    docmodel::Document doc;
    try {
        doc = docmodel::segment_document(file, read_file(file));
    } catch (const docmodel::SegmentError& e) {
        err << file << ": offset " << e.offset() << ": " << e.what() << '\n';
        return kDataError;
    }
    int status = kSuccess;
    ojson runs = ojson::array();
    std::size_t index = 0;
    for (const auto* run : doc.math_runs()) {
        const std::u32string_view body(doc.text.data() + run->body.start, run->body.length());
        std::vector<mathparse::MathToken> tokens;
        try {
            tokens = mathparse::tokenize_latex(body, {run->body.start, false});
        } catch (const mathparse::ParseError&) {
        }
        if (run->failure) {
            err << file << ": offset " << run->failure->offset << ": " << run->failure->message << '\n';
            status = kDataError;
        }
        if (as_json) {
            ojson r;
            r["start"] = run->span.start;
            r["end"] = run->span.end;
            r["delimiter"] = run->delimiter;
            r["latex"] = doc.body_latex(*run);
            ojson toks = ojson::array();
            for (const auto& t : tokens)
                toks.push_back({{"kind", std::string(mathparse::to_string(t.kind))},
                                {"text", t.text},
                                {"offset", t.offset},
                                {"length", t.length}});
            r["tokens"] = toks;
            if (run->tree) r["tree"] = mathparse::to_sexpr(*run->tree);
            else r["error"] = {{"offset", run->failure->offset}, {"message", run->failure->message}};
            runs.push_back(r);
        } else {
            out << "run " << index << " [" << run->span.start << ", " << run->span.end << ") " << run->delimiter
                << ": " << doc.body_latex(*run) << '\n';
            out << "  tokens:";
            for (const auto& t : tokens) out << ' ' << mathparse::to_string(t.kind) << '(' << t.text << ')';
            out << '\n';
            if (run->tree) out << "  tree: " << mathparse::to_sexpr(*run->tree) << '\n';
        }
        ++index;
    }
    if (as_json && !doc.text.empty()) out << runs.dump(2) << '\n';
    return status;
}

// ---- generate ------------------------------------------------------------------

struct NamedRecipe {
    std::string name;
    obfuscate::Recipe steps;
};

std::vector<NamedRecipe> parse_recipes(const json& j) {
    if (!j.is_array()) throw UsageError("recipes: expected a JSON array of recipes");
    std::vector<NamedRecipe> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        try {
            NamedRecipe r{"r" + std::to_string(i), {}};
            const json* steps = &j[i];
            if (j[i].is_object()) {
                for (const auto& [key, v] : j[i].items())
                    if (key != "name" && key != "steps") throw std::invalid_argument("unknown key '" + key + "'");
                if (j[i].contains("name")) {
                    if (!j[i]["name"].is_string()) throw std::invalid_argument("'name' must be a string");
                    r.name = j[i]["name"].get<std::string>();
                }
                if (!j[i].contains("steps")) throw std::invalid_argument("missing 'steps'");
                steps = &j[i]["steps"];
            }
            r.steps = obfuscate::parse_recipe(*steps);
            out.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw UsageError("recipe " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

ojson trace_json(const std::string& inspected, std::size_t step, const obfuscate::ObfuscationTrace& t) {
    ojson edits = ojson::array();
    for (const auto& e : t.edits)
        edits.push_back({{"original", {e.original.start, e.original.end}},
                         {"replacement", {e.replacement.start, e.replacement.end}},
                         {"entry", e.entry}});
    ojson j;
    j["inspected"] = inspected;
    j["step"] = step;
    j["op"] = std::string(docmodel::to_string(t.op));
    j["seed"] = t.seed;
    j["edits"] = edits;
    j["skipped"] = t.skipped;
    return j;
}

int cmd_generate(const std::string& corpus_dir, const std::string& recipes_file, std::uint64_t seed,
                 const std::string& out_dir, std::ostream& out, std::ostream& err) {
    const docmodel::Corpus sources = load(corpus_dir);
    const json recipes_json = read_json(recipes_file);
    const auto recipes = parse_recipes(recipes_json);
    fs::create_directories(out_dir);

    docmodel::Corpus result;
    result.documents = sources.documents;
    std::vector<std::string> traces;
    std::size_t pairs = 0;
    for (const auto& [id, src] : sources.documents) {
        for (const auto& r : recipes) {
            const std::string insp_id = id + "~" + r.name;
            if (result.documents.count(insp_id)) throw UsageError("generated id '" + insp_id + "' already exists");
            const std::uint64_t s = util::mix_seed(seed, util::fnv1a(insp_id));
            auto g = obfuscate::generate_pair(src, insp_id, r.steps, s);
            for (const auto& w : g.warnings) err << "warning: " << insp_id << ": " << w << '\n';
            for (std::size_t k = 0; k < g.traces.size(); ++k) traces.push_back(trace_json(insp_id, k, g.traces[k]).dump());
            for (auto& c : g.cases) result.cases.push_back(std::move(c));
            result.documents.emplace(insp_id, std::move(g.inspected));
            ++pairs;
        }
    }
    docmodel::derive_pairs(result);
    docmodel::save_corpus(result, out_dir);
    write_lines(fs::path(out_dir) / "traces.jsonl", traces);

    json config = json::array();
    for (const auto& r : recipes) config.push_back({{"name", r.name}, {"steps", obfuscate::recipe_to_json(r.steps)}});
    const auto m = write_manifest(out_dir, "generate", config, {corpus_dir, recipes_file}, seed);
    out << pairs << " pairs, " << result.cases.size() << " cases; digest " << m["output_digest"].get<std::string>()
        << '\n';
    return kSuccess;
}

// ---- detect --------------------------------------------------------------------

std::string safe_name(const std::string& id) {
    std::string s;
    for (char c : id) s += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
    return s.empty() ? "_" : s;
}

int cmd_detect(const std::string& queries_dir, const std::string& collection_dir, const std::string& config_file,
               const std::string& out_dir, std::ostream& out, std::ostream&) {
    const docmodel::Corpus queries = load(queries_dir);
    const docmodel::Corpus collection = load(collection_dir);
    detect::DetectorConfig config;
    try {
        config = detect::DetectorConfig::from_json(read_json(config_file));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (collection.documents.empty()) throw UsageError("collection '" + collection_dir + "' is empty");

    std::vector<const docmodel::Document*> docs;
    for (const auto& [id, d] : collection.documents) docs.push_back(&d);
    const detect::Index index(docs, config);

    std::vector<const docmodel::Document*> qs;
    for (const auto& [id, d] : queries.documents) qs.push_back(&d);
    std::vector<detect::Retrieval> retrieved(qs.size());
    std::vector<std::vector<detect::Detection>> found(qs.size());
    // Parallel over queries; every query writes its own slot.
    util::parallel_for(qs.size(), [&](std::size_t i) {
        retrieved[i] = detect::retrieve_topk(*qs[i], index, config.k, 1);
        for (const auto& r : retrieved[i].ranked)
            for (auto& d : detect::detect_pair(*qs[i], collection.documents.at(r.doc_id), config))
                found[i].push_back(std::move(d));
    });

    fs::create_directories(fs::path(out_dir) / "detections");
    std::vector<std::string> retrieval_lines;
    std::set<std::string> used;
    std::size_t total = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        std::string name = safe_name(qs[i]->id);
        for (std::size_t n = 2; !used.insert(name).second; ++n) name = safe_name(qs[i]->id) + "-" + std::to_string(n);
        std::vector<std::string> lines;
        for (const auto& d : found[i]) lines.push_back(detection_to_json(d));
        write_lines(fs::path(out_dir) / "detections" / (name + ".jsonl"), lines);
        total += lines.size();
        ojson ranked = ojson::array();
        for (const auto& r : retrieved[i].ranked) ranked.push_back({{"doc", r.doc_id}, {"score", r.score}});
        ojson rj;
        rj["query"] = qs[i]->id;
        rj["ranked"] = ranked;
        rj["truncated"] = retrieved[i].truncated;
        retrieval_lines.push_back(rj.dump());
    }
    write_lines(fs::path(out_dir) / "retrieval.jsonl", retrieval_lines);
    const auto m = write_manifest(out_dir, "detect", config.to_json(), {queries_dir, collection_dir, config_file}, 0);
    out << qs.size() << " queries, " << total << " detections; digest " << m["output_digest"].get<std::string>()
        << '\n';
    return kSuccess;
}

// ---- eval ----------------------------------------------------------------------

int cmd_eval(const std::string& truth_file, const std::string& detections_dir, const std::string& out_file,
             const std::string& corpus_dir, std::ostream& out, std::ostream&) {
    if (!fs::is_regular_file(truth_file)) throw UsageError("no such file '" + truth_file + "'");
    const auto truth = docmodel::read_cases(truth_file);
    const auto dets = read_detections(detections_dir);

    std::set<std::string> inspected;
    for (const auto& c : truth) inspected.insert(c.insp.doc_id);
    for (const auto& d : dets)
        if (!inspected.count(d.insp.doc_id))
            throw UsageError("detection for document '" + d.insp.doc_id + "' has no ground truth");
    if (!corpus_dir.empty()) {
        std::map<std::string, std::size_t> lengths;
        for (const auto& [id, d] : load(corpus_dir).documents) lengths[id] = d.length();
        try {
            evalmetrics::case_precision_recall(truth, dets, lengths);
        } catch (const std::out_of_range& e) {
            throw docmodel::CorpusError(truth_file, 0, "", e.what());
        }
    }

    std::map<std::string, std::vector<detect::Detection>> by_detector;
    for (const auto& d : dets) by_detector[d.detector].push_back(d);
    std::vector<evalmetrics::EvalReport> reports;
    if (by_detector.size() != 1) reports.push_back(evalmetrics::per_operator_report(truth, dets, "all"));
    for (const auto& [name, ds] : by_detector) reports.push_back(evalmetrics::per_operator_report(truth, ds, name));

    const fs::path p(out_file);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream o(p, std::ios::binary);
    if (p.extension() == ".csv") {
        o << evalmetrics::reports_to_csv(reports);
    } else {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(evalmetrics::report_to_json(r));
        o << arr.dump(2) << '\n';
    }
    for (const auto& r : reports)
        out << (r.detector.empty() ? "-" : r.detector) << ": F1 " << r.overall.f1 << ", G " << r.overall.granularity
            << ", PD " << r.overall.plagdet << '\n';
    return kSuccess;
}

// ---- agree ---------------------------------------------------------------------

int cmd_agree(const std::string& a_file, const std::string& b_file, std::ostream& out, std::ostream&) {
    for (const auto& f : {a_file, b_file})
        if (!fs::is_regular_file(f)) throw UsageError("no such file '" + f + "'");
    const auto a = docmodel::read_cases(a_file);
    const auto b = docmodel::read_cases(b_file);
    const auto docs = [](const std::vector<docmodel::ReuseCase>& cs) {
        std::set<std::string> s;
        for (const auto& c : cs) {
            s.insert(c.src.doc_id);
            s.insert(c.insp.doc_id);
        }
        return s;
    };
    if (docs(a) != docs(b)) throw UsageError("the annotation files cover different documents");
    const auto r = evalmetrics::agreement(a, b);
    ojson j;
    j["token_jaccard"] = r.token_jaccard;
    j["case_type_overlap"] = r.case_type_overlap;
    j["obfuscation_overlap"] = r.obfuscation_overlap;
    j["kappa"] = r.kappa;
    j["aligned_cases"] = r.aligned;
    out << j.dump(2) << '\n';
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mathematical content reuse toolkit", "mathreuse"};
    app.require_subcommand(0, 1);
    bool version = false;
    app.add_flag("--version", version, "Print tool and format versions");

    std::string parse_file;
    bool parse_json = false;
    auto* parse = app.add_subcommand("parse", "Tokenize and parse every formula of a LaTeX file");
    parse->add_option("file", parse_file, "LaTeX file")->required();
    parse->add_flag("--json", parse_json, "Structured output");

    std::string gen_corpus, gen_recipes, gen_out;
    std::uint64_t gen_seed = 0;
    auto* generate = app.add_subcommand("generate", "Generate obfuscated pairs with ground truth");
    generate->add_option("--corpus", gen_corpus, "Source corpus directory")->required();
    generate->add_option("--recipes", gen_recipes, "Recipe file (JSON)")->required();
    generate->add_option("--seed", gen_seed, "Seed")->required();
    generate->add_option("--out", gen_out, "Output directory")->required();

    std::string det_queries, det_collection, det_config, det_out;
    auto* detect_cmd = app.add_subcommand("detect", "Retrieve candidates and detect reuse for each query");
    detect_cmd->add_option("--queries", det_queries, "Query corpus directory")->required();
    detect_cmd->add_option("--collection", det_collection, "Collection corpus directory")->required();
    detect_cmd->add_option("--config", det_config, "Detector configuration (JSON)")->required();
    detect_cmd->add_option("--out", det_out, "Output directory")->required();

    std::string ev_truth, ev_dets, ev_out, ev_corpus;
    auto* eval = app.add_subcommand("eval", "Score detections against ground truth");
    eval->add_option("--truth", ev_truth, "Ground-truth cases.jsonl")->required();
    eval->add_option("--detections", ev_dets, "Detections directory")->required();
    eval->add_option("--out", ev_out, "Report path (.json or .csv)")->required();
    eval->add_option("--corpus", ev_corpus, "Corpus directory for span bounds checks");

    std::string ag_a, ag_b;
    auto* agree = app.add_subcommand("agree", "Agreement between two annotation files");
    agree->add_option("--a", ag_a, "First cases.jsonl")->required();
    agree->add_option("--b", ag_b, "Second cases.jsonl")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (version) {
            out << "mathreuse " << MATHREUSE_VERSION << " (format " << MATHREUSE_FORMAT_VERSION << ")\n";
            return kSuccess;
        }
        if (parse->parsed()) return cmd_parse(parse_file, parse_json, out, err);
        if (generate->parsed()) return cmd_generate(gen_corpus, gen_recipes, gen_seed, gen_out, out, err);
        if (detect_cmd->parsed()) return cmd_detect(det_queries, det_collection, det_config, det_out, out, err);
        if (eval->parsed()) return cmd_eval(ev_truth, ev_dets, ev_out, ev_corpus, out, err);
        if (agree->parsed()) return cmd_agree(ag_a, ag_b, out, err);
        out << app.help();
        return kUsageError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const docmodel::CorpusError& e) {
        err << "error: " << e.file();
        if (e.line() > 0) err << ':' << e.line();
        if (!e.field().empty()) err << " [" << e.field() << ']';
        err << ": " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
}

}  // namespace mathreuse::cli
