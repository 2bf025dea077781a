#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mathreuse/docmodel/document.hpp"
#include "mathreuse/docmodel/reuse.hpp"

namespace mathreuse::docmodel {

struct Corpus {
    std::map<std::string, Document> documents;
    std::vector<ReuseCase> cases;
    std::vector<std::pair<std::string, std::string>> pairs;  // (inspected, source)

    const Document& doc(const std::string& id) const;
    bool has_pair(const std::string& inspected, const std::string& source) const;
};

// Malformed input or a violated corpus invariant. `file` and `line` are set
// when the problem comes from a specific record (line is 1-based, 0 if n/a).
class CorpusError : public std::runtime_error {
public:
    CorpusError(std::string file, std::size_t line, std::string field, const std::string& message);
    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::string file_;
    std::size_t line_;
    std::string field_;
};

// Reads documents.jsonl, cases.jsonl (optional) and pairs.jsonl (optional;
// derived from the cases when absent) and validates the result.
Corpus load_corpus(const std::filesystem::path& dir);

// Writes the three files. Records are emitted in a fixed order so equal
// corpora produce identical bytes.
void save_corpus(const Corpus& corpus, const std::filesystem::path& dir);

// Throws CorpusError on the first violated invariant: dangling document
// references, spans outside a document, empty operator sets, missing pairs,
// and math-typed cases whose spans miss every math run.
void validate(const Corpus& corpus);

// Adds (inspected, source) pairs implied by the cases, keeping first-seen order.
void derive_pairs(Corpus& corpus);

struct OperatorCount {
    std::size_t combined = 0;
    std::size_t unique = 0;
    double presence = 0.0;  // combined / total cases, as a fraction
};

struct CorpusStats {
    std::size_t total_cases = 0;
    std::array<OperatorCount, 7> per_operator{};

    const OperatorCount& operator[](ObfuscationOperator op) const {
        return per_operator[static_cast<std::size_t>(op)];
    }
};

CorpusStats corpus_stats(const std::vector<ReuseCase>& cases);
inline CorpusStats corpus_stats(const Corpus& c) { return corpus_stats(c.cases); }

// JSON line codecs shared with the CLI.
std::string case_to_json(const ReuseCase& c);
ReuseCase case_from_json(std::string_view line, const std::string& file = "<memory>", std::size_t lineno = 0);
std::vector<ReuseCase> read_cases(const std::filesystem::path& file);
void write_cases(const std::vector<ReuseCase>& cases, const std::filesystem::path& file);

}  // namespace mathreuse::docmodel
