#include <algorithm>
#include <fstream>
#include <sstream>

#include "mathreuse/cli/cli.hpp"
#include "mathreuse/docmodel/corpus.hpp"
#include "mathreuse/util/hash.hpp"

namespace mathreuse::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string detection_to_json(const detect::Detection& d) {
    ojson j;
    j["src_doc"] = d.src.doc_id;
    j["src_start"] = d.src.start;
    j["src_end"] = d.src.end;
    j["insp_doc"] = d.insp.doc_id;
    j["insp_start"] = d.insp.start;
    j["insp_end"] = d.insp.end;
    j["score"] = d.score;
    j["detector"] = d.detector;
    return j.dump();
}

detect::Detection detection_from_json(const std::string& line, const std::string& file, std::size_t lineno) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw docmodel::CorpusError(file, lineno, "", e.what());
    }
    const auto str = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_string()) throw docmodel::CorpusError(file, lineno, key, "expected a string");
        return j[key].get<std::string>();
    };
    const auto num = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_number_unsigned())
            throw docmodel::CorpusError(file, lineno, key, "expected a non-negative integer");
        return j[key].get<std::size_t>();
    };
    detect::Detection d;
    d.src = {str("src_doc"), num("src_start"), num("src_end")};
    d.insp = {str("insp_doc"), num("insp_start"), num("insp_end")};
    if (d.src.start > d.src.end) throw docmodel::CorpusError(file, lineno, "src_end", "span ends before it starts");
    if (d.insp.start > d.insp.end) throw docmodel::CorpusError(file, lineno, "insp_end", "span ends before it starts");
    if (!j.contains("score") || !j["score"].is_number()) throw docmodel::CorpusError(file, lineno, "score", "expected a number");
    d.score = j["score"].get<double>();
    d.detector = str("detector");
    return d;
}

std::vector<detect::Detection> read_detections(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw docmodel::CorpusError(dir.string(), 0, "", "not a directory");
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".jsonl" && e.path().filename() != "retrieval.jsonl")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<detect::Detection> out;
    for (const auto& f : files) {
        std::ifstream in(f);
        std::string line;
        for (std::size_t n = 1; std::getline(in, line); ++n)
            if (!line.empty()) out.push_back(detection_from_json(line, f.string(), n));
    }
    return out;
}

namespace {

std::string file_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

std::string output_digest(const fs::path& dir) {
    std::vector<std::pair<std::string, std::string>> entries;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        const std::string rel = fs::relative(e.path(), dir).generic_string();
        if (rel == "manifest.json") continue;
        entries.emplace_back(rel, util::sha256_hex(file_bytes(e.path())));
    }
    std::sort(entries.begin(), entries.end());
    std::string listing;
    for (const auto& [p, h] : entries) listing += p + "\t" + h + "\n";
    return util::sha256_hex(listing);
}

nlohmann::json write_manifest(const fs::path& dir, const std::string& command, const nlohmann::json& config,
                              const std::vector<std::string>& inputs, std::uint64_t seed) {
    ojson files = ojson::object();
    std::vector<std::string> rels;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file()) rels.push_back(fs::relative(e.path(), dir).generic_string());
    std::sort(rels.begin(), rels.end());
    for (const auto& r : rels)
        if (r != "manifest.json") files[r] = util::sha256_hex(file_bytes(dir / r));
    ojson m;
    m["command"] = command;
    m["tool_version"] = MATHREUSE_VERSION;
    m["format_version"] = MATHREUSE_FORMAT_VERSION;
    m["seed"] = seed;
    m["inputs"] = inputs;
    m["config"] = config;
    m["files"] = files;
    m["output_digest"] = output_digest(dir);
    std::ofstream(dir / "manifest.json", std::ios::binary) << m.dump(2) << "\n";
    return nlohmann::json::parse(m.dump());
}

}  // namespace mathreuse::cli
