#include "mathreuse/docmodel/corpus.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace mathreuse::docmodel {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

CorpusError::CorpusError(std::string file, std::size_t line, std::string field, const std::string& message)
    : std::runtime_error([&] {
          std::string m = file;
          if (line > 0) m += ":" + std::to_string(line);
          if (!field.empty()) m += ": field '" + field + "'";
          return m + ": " + message;
      }()),
      file_(std::move(file)),
      line_(line),
      field_(std::move(field)) {}

const Document& Corpus::doc(const std::string& id) const {
    const auto it = documents.find(id);
    if (it == documents.end()) throw CorpusError("", 0, "", "unknown document '" + id + "'");
    return it->second;
}

bool Corpus::has_pair(const std::string& inspected, const std::string& source) const {
    for (const auto& [i, s] : pairs)
        if (i == inspected && s == source) return true;
    return false;
}

namespace {

ojson parse_line(std::string_view line, const std::string& file, std::size_t lineno) {
    ojson j;
    try {
        j = ojson::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw CorpusError(file, lineno, "", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CorpusError(file, lineno, "", "record is not an object");
    return j;
}

std::string get_string(const ojson& j, const char* field, const std::string& file, std::size_t lineno) {
    const auto it = j.find(field);
    if (it == j.end()) throw CorpusError(file, lineno, field, "missing");
    if (!it->is_string()) throw CorpusError(file, lineno, field, "expected a string");
    return it->get<std::string>();
}

std::size_t get_offset(const ojson& j, const char* field, const std::string& file, std::size_t lineno) {
    const auto it = j.find(field);
    if (it == j.end()) throw CorpusError(file, lineno, field, "missing");
    if (!it->is_number_integer() || it->get<long long>() < 0)
        throw CorpusError(file, lineno, field, "expected a non-negative integer");
    return it->get<std::size_t>();
}

template <typename Fn>
void for_each_line(const fs::path& path, Fn&& fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError(path.string(), 0, "", "cannot open");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        fn(line, lineno);
    }
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CorpusError(path.string(), 0, "", "cannot write");
    for (const auto& l : lines) out << l << '\n';
}

}  // namespace

std::string case_to_json(const ReuseCase& c) {
    ojson j;
    j["src_doc"] = c.src.doc_id;
    j["src_start"] = c.src.start;
    j["src_end"] = c.src.end;
    j["insp_doc"] = c.insp.doc_id;
    j["insp_start"] = c.insp.start;
    j["insp_end"] = c.insp.end;
    j["ops"] = c.ops.names();
    j["case_type"] = std::string(to_string(c.case_type));
    return j.dump();
}

ReuseCase case_from_json(std::string_view line, const std::string& file, std::size_t lineno) {
    const ojson j = parse_line(line, file, lineno);
    ReuseCase c;
    c.src = {get_string(j, "src_doc", file, lineno), get_offset(j, "src_start", file, lineno),
             get_offset(j, "src_end", file, lineno)};
    c.insp = {get_string(j, "insp_doc", file, lineno), get_offset(j, "insp_start", file, lineno),
              get_offset(j, "insp_end", file, lineno)};
    const auto ops = j.find("ops");
    if (ops == j.end()) throw CorpusError(file, lineno, "ops", "missing");
    if (!ops->is_array()) throw CorpusError(file, lineno, "ops", "expected an array");
    for (const auto& o : *ops) {
        if (!o.is_string()) throw CorpusError(file, lineno, "ops", "expected operator abbreviations");
        const auto op = parse_operator(o.get<std::string>());
        if (!op) throw CorpusError(file, lineno, "ops", "unknown operator '" + o.get<std::string>() + "'");
        c.ops.insert(*op);
    }
    const auto type = parse_case_type(get_string(j, "case_type", file, lineno));
    if (!type) throw CorpusError(file, lineno, "case_type", "expected text, math or both");
    c.case_type = *type;
    return c;
}

std::vector<ReuseCase> read_cases(const fs::path& file) {
    std::vector<ReuseCase> out;
    for_each_line(file, [&](const std::string& line, std::size_t lineno) {
        out.push_back(case_from_json(line, file.string(), lineno));
    });
    return out;
}

void write_cases(const std::vector<ReuseCase>& cases, const fs::path& file) {
    std::vector<std::string> lines;
    lines.reserve(cases.size());
    for (const auto& c : cases) lines.push_back(case_to_json(c));
    write_lines(file, lines);
}

void derive_pairs(Corpus& corpus) {
    std::set<std::pair<std::string, std::string>> seen(corpus.pairs.begin(), corpus.pairs.end());
    for (const auto& c : corpus.cases) {
        std::pair<std::string, std::string> p{c.insp.doc_id, c.src.doc_id};
        if (seen.insert(p).second) corpus.pairs.push_back(std::move(p));
    }
}

Corpus load_corpus(const fs::path& dir) {
    Corpus corpus;
    const fs::path docs = dir / "documents.jsonl";
    if (!fs::exists(docs)) throw CorpusError(docs.string(), 0, "", "missing documents.jsonl");
    for_each_line(docs, [&](const std::string& line, std::size_t lineno) {
        const ojson j = parse_line(line, docs.string(), lineno);
        std::string id = get_string(j, "id", docs.string(), lineno);
        const std::string latex = get_string(j, "latex", docs.string(), lineno);
        if (corpus.documents.count(id)) throw CorpusError(docs.string(), lineno, "id", "duplicate id '" + id + "'");
        try {
            Document d = segment_document(id, latex);
            corpus.documents.emplace(std::move(id), std::move(d));
        } catch (const SegmentError& e) {
            throw CorpusError(docs.string(), lineno, "latex",
                              std::string(e.what()) + " at offset " + std::to_string(e.offset()));
        }
    });
    if (fs::exists(dir / "cases.jsonl")) corpus.cases = read_cases(dir / "cases.jsonl");
    const fs::path pairs = dir / "pairs.jsonl";
    if (fs::exists(pairs)) {
        for_each_line(pairs, [&](const std::string& line, std::size_t lineno) {
            const ojson j = parse_line(line, pairs.string(), lineno);
            corpus.pairs.emplace_back(get_string(j, "inspected", pairs.string(), lineno),
                                      get_string(j, "source", pairs.string(), lineno));
        });
    } else {
        derive_pairs(corpus);
    }
    validate(corpus);
    return corpus;
}

void save_corpus(const Corpus& corpus, const fs::path& dir) {
    fs::create_directories(dir);
    std::vector<std::string> lines;
    for (const auto& [id, d] : corpus.documents) {
        ojson j;
        j["id"] = id;
        j["latex"] = d.utf8();
        lines.push_back(j.dump());
    }
    write_lines(dir / "documents.jsonl", lines);
    write_cases(corpus.cases, dir / "cases.jsonl");
    lines.clear();
    for (const auto& [i, s] : corpus.pairs) {
        ojson j;
        j["inspected"] = i;
        j["source"] = s;
        lines.push_back(j.dump());
    }
    write_lines(dir / "pairs.jsonl", lines);
}

void validate(const Corpus& corpus) {
    for (const auto& [i, s] : corpus.pairs) {
        if (!corpus.documents.count(i)) throw CorpusError("pairs.jsonl", 0, "inspected", "unknown document '" + i + "'");
        if (!corpus.documents.count(s)) throw CorpusError("pairs.jsonl", 0, "source", "unknown document '" + s + "'");
    }
    std::size_t lineno = 0;
    for (const auto& c : corpus.cases) {
        ++lineno;
        auto check_span = [&](const Span& sp, const char* doc_field, const char* end_field) -> const Document& {
            const auto it = corpus.documents.find(sp.doc_id);
            if (it == corpus.documents.end())
                throw CorpusError("cases.jsonl", lineno, doc_field, "unknown document '" + sp.doc_id + "'");
            if (!(sp.start < sp.end && sp.end <= it->second.length()))
                throw CorpusError("cases.jsonl", lineno, end_field,
                                  "span [" + std::to_string(sp.start) + "," + std::to_string(sp.end) +
                                      ") outside document of length " + std::to_string(it->second.length()));
            return it->second;
        };
        const Document& src = check_span(c.src, "src_doc", "src_end");
        const Document& insp = check_span(c.insp, "insp_doc", "insp_end");
        if (c.ops.empty()) throw CorpusError("cases.jsonl", lineno, "ops", "empty operator set");
        if (!corpus.has_pair(c.insp.doc_id, c.src.doc_id))
            throw CorpusError("cases.jsonl", lineno, "insp_doc", "document pair not listed in pairs");
        if (c.case_type == CaseType::Math &&
            (!touches_math(src, c.src.interval()) || !touches_math(insp, c.insp.interval())))
            throw CorpusError("cases.jsonl", lineno, "case_type", "math case without a formula on both sides");
    }
}

CorpusStats corpus_stats(const std::vector<ReuseCase>& cases) {
    CorpusStats st;
    st.total_cases = cases.size();
    for (const auto& c : cases) {
        for (auto op : c.ops.items()) {
            auto& slot = st.per_operator[static_cast<std::size_t>(op)];
            ++slot.combined;
            if (c.ops.size() == 1) ++slot.unique;
        }
    }
    for (auto& slot : st.per_operator)
        slot.presence = st.total_cases == 0 ? 0.0 : static_cast<double>(slot.combined) / st.total_cases;
    return st;
}

}  // namespace mathreuse::docmodel
