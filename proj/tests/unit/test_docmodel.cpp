#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mathreuse/docmodel/corpus.hpp"
#include "mathreuse/mathparse/render.hpp"
#include "mathreuse/util/rng.hpp"
#include "support/tempdir.hpp"

using namespace mathreuse;
using namespace mathreuse::docmodel;
using testing::TempDir;
using testing::write_file;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_tiling(const Document& d) {
    std::size_t pos = 0;
    for (const auto& r : d.runs) {
        CHECK(r.span.start == pos);
        CHECK(r.span.end > r.span.start);
        pos = r.span.end;
        if (r.is_math()) CHECK(r.tree.has_value() != r.failure.has_value());
    }
    CHECK(pos == d.length());
}

ReuseCase mk(std::string s, std::size_t a, std::size_t b, std::string i, std::size_t c, std::size_t d,
             OperatorSet ops, CaseType t = CaseType::Text) {
    return ReuseCase{{std::move(s), a, b}, {std::move(i), c, d}, ops, t};
}

}  // namespace

TEST_SUITE("docmodel") {

TEST_CASE("segment examples") {
    const Document d = segment_document("d", std::string_view("see $x+1$ now"));
    REQUIRE(d.runs.size() == 3);
    CHECK(d.runs[0].kind == RunKind::Text);
    CHECK(d.slice(d.runs[0].span) == "see ");
    CHECK(d.runs[1].is_math());
    CHECK(d.body_latex(d.runs[1]) == "x+1");
    CHECK(d.slice(d.runs[2].span) == " now");
    CHECK(mathparse::render_latex(*d.runs[1].tree) == "x+1");
    // leaf offsets are absolute
    CHECK(d.runs[1].tree->children[0].span == Interval{5, 6});

    const Document empty = segment_document("e", std::string_view(""));
    CHECK(empty.runs.empty());
    CHECK(empty.length() == 0);

    const Document two = segment_document("t", std::string_view("$a$$b$"));
    REQUIRE(two.runs.size() == 2);
    CHECK(two.runs[0].is_math());
    CHECK(two.runs[1].is_math());
    CHECK(two.runs[0].span == Interval{0, 3});
    CHECK(two.runs[1].span == Interval{3, 6});
    check_tiling(two);
}

TEST_CASE("segment delimiters") {
    const Document d = segment_document(
        "d", std::string_view("A \\$5 fee, $$E=mc^2$$ and \\(a\\) and \\[b\\] then \\begin{align*} x &= 1 \\\\ &= y \\end{align*}."));
    std::vector<std::string> bodies;
    for (const Run* r : d.math_runs()) bodies.push_back(d.body_latex(*r));
    CHECK(bodies == std::vector<std::string>{"E=mc^2", "a", "b", " x &= 1 \\\\ &= y "});
    check_tiling(d);
    CHECK(d.math_runs()[3]->tree->children.size() == 3);
}

TEST_CASE("segment records parse failures and rejects unterminated math") {
    const Document d = segment_document("d", std::string_view("bad $x+$ ok"));
    REQUIRE(d.runs.size() == 3);
    CHECK(d.runs[1].failure.has_value());
    CHECK_FALSE(d.runs[1].tree.has_value());
    try {
        segment_document("d", std::string_view("text $x+1 and more"));
        FAIL("expected error");
    } catch (const SegmentError& e) {
        CHECK(e.offset() == 5);
    }
}

TEST_CASE("offsets count code points") {
    const Document d = segment_document("u", std::string_view("für $x≤1$"));
    REQUIRE(d.runs.size() == 2);
    CHECK(d.runs[1].span == Interval{4, 9});
}

TEST_CASE("classify spans") {
    const Document d = segment_document("d", std::string_view("see $x+1$ now"));
    CHECK(classify_span(d, {4, 9}) == CaseType::Math);
    CHECK(classify_span(d, {3, 9}) == CaseType::Math);
    CHECK(classify_span(d, {0, 3}) == CaseType::Text);
    CHECK(classify_span(d, {0, 13}) == CaseType::Both);
}

TEST_CASE("load minimal corpus and negative fixtures") {
    TempDir dir("corpus");
    write_file(dir / "documents.jsonl",
               "{\"id\":\"s\",\"latex\":\"hello $x$\"}\n{\"id\":\"i\",\"latex\":\"hi $y$\"}\n");
    write_file(dir / "cases.jsonl",
               "{\"src_doc\":\"s\",\"src_start\":0,\"src_end\":9,\"insp_doc\":\"i\",\"insp_start\":0,\"insp_end\":6,"
               "\"ops\":[\"P\",\"DP\"],\"case_type\":\"both\"}\n");
    const Corpus c = load_corpus(dir.path());
    CHECK(c.documents.size() == 2);
    CHECK(c.cases.size() == 1);
    CHECK(c.pairs == std::vector<std::pair<std::string, std::string>>{{"i", "s"}});
    CHECK(c.cases[0].ops == OperatorSet{ObfuscationOperator::P, ObfuscationOperator::DP});

    write_file(dir / "cases.jsonl",
               "{\"src_doc\":\"nope\",\"src_start\":0,\"src_end\":9,\"insp_doc\":\"i\",\"insp_start\":0,\"insp_end\":6,"
               "\"ops\":[\"P\"],\"case_type\":\"text\"}\n");
    CHECK_THROWS_AS(load_corpus(dir.path()), CorpusError);

    write_file(dir / "cases.jsonl",
               "{\"src_doc\":\"s\",\"src_start\":0,\"src_end\":9,\"insp_doc\":\"i\",\"insp_start\":0,\"insp_end\":6,"
               "\"ops\":[\"Q\"],\"case_type\":\"text\"}\n");
    try {
        load_corpus(dir.path());
        FAIL("expected error");
    } catch (const CorpusError& e) {
        CHECK(e.line() == 1);
        CHECK(e.field() == "ops");
        CHECK(e.file().find("cases.jsonl") != std::string::npos);
    }

    write_file(dir / "cases.jsonl",
               "{\"src_doc\":\"s\",\"src_start\":0,\"src_end\":5,\"insp_doc\":\"i\",\"insp_start\":0,\"insp_end\":2,"
               "\"ops\":[\"P\"],\"case_type\":\"math\"}\n");
    CHECK_THROWS_AS(load_corpus(dir.path()), CorpusError);
}

TEST_CASE("corpus stats") {
    const std::vector<ReuseCase> only_p = {mk("s", 0, 1, "i", 0, 1, {ObfuscationOperator::P}),
                                           mk("s", 1, 2, "i", 1, 2, {ObfuscationOperator::P})};
    const CorpusStats a = corpus_stats(only_p);
    CHECK(a[ObfuscationOperator::P].combined == 2);
    CHECK(a[ObfuscationOperator::P].unique == 2);
    CHECK(a[ObfuscationOperator::ID].combined == 0);

    const std::vector<ReuseCase> two = {
        mk("s", 0, 1, "i", 0, 1, {ObfuscationOperator::P, ObfuscationOperator::ID}),
        mk("s", 1, 2, "i", 1, 2, {ObfuscationOperator::P})};
    const CorpusStats b = corpus_stats(two);
    CHECK(b[ObfuscationOperator::P].combined == 2);
    CHECK(b[ObfuscationOperator::P].unique == 1);
    CHECK(b[ObfuscationOperator::ID].combined == 1);
    CHECK(b[ObfuscationOperator::ID].unique == 0);
    CHECK(b[ObfuscationOperator::P].presence + b[ObfuscationOperator::ID].presence == doctest::Approx(1.5));
    CHECK(corpus_stats(std::vector<ReuseCase>{}).total_cases == 0);
}

TEST_CASE("property: random corpora stats bounds and save/load round trip") {
    util::Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        Corpus c;
        const int ndocs = 2 + static_cast<int>(rng.below(4));
        for (int k = 0; k < ndocs; ++k) {
            std::string text = "Doc " + std::to_string(k) + " has $x_" + std::to_string(k) + "+1$ and ünï text.";
            c.documents.emplace("d" + std::to_string(k), segment_document("d" + std::to_string(k), std::string_view(text)));
        }
        const int ncases = static_cast<int>(rng.below(8));
        for (int k = 0; k < ncases; ++k) {
            const std::string s = "d" + std::to_string(rng.below(ndocs));
            const std::string i = "d" + std::to_string(rng.below(ndocs));
            OperatorSet ops;
            for (auto op : kAllOperators)
                if (rng.chance(0.3)) ops.insert(op);
            if (ops.empty()) ops.insert(ObfuscationOperator::VS);
            c.cases.push_back(mk(s, rng.below(5), 6 + rng.below(10), i, rng.below(5), 6 + rng.below(10), ops,
                                 rng.chance(0.5) ? CaseType::Both : CaseType::Text));
        }
        derive_pairs(c);
        const CorpusStats st = corpus_stats(c);
        double sum = 0;
        for (auto op : kAllOperators) {
            CHECK(st[op].unique <= st[op].combined);
            CHECK(st[op].combined <= st.total_cases);
            sum += st[op].presence;
        }
        CHECK(sum >= 0.0);  // multi-label: may exceed 1, never renormalized
        TempDir dir("rt");
        save_corpus(c, dir.path());
        const Corpus back = load_corpus(dir.path());
        CHECK(back.cases == c.cases);
        CHECK(back.pairs == c.pairs);
        REQUIRE(back.documents.size() == c.documents.size());
        for (const auto& [id, d] : c.documents) CHECK(back.doc(id).text == d.text);
        TempDir dir2("rt2");
        save_corpus(back, dir2.path());
        for (auto f : {"documents.jsonl", "cases.jsonl", "pairs.jsonl"})
            CHECK(read_file(dir.path() / f) == read_file(dir2.path() / f));
    }
}

TEST_CASE("presence percentages are not renormalized") {
    std::vector<ReuseCase> cs = {mk("s", 0, 1, "i", 0, 1, {ObfuscationOperator::P, ObfuscationOperator::ID,
                                                          ObfuscationOperator::VS})};
    const CorpusStats st = corpus_stats(cs);
    double sum = 0;
    for (auto op : kAllOperators) sum += st[op].presence;
    CHECK(sum == doctest::Approx(3.0));
}

}  // TEST_SUITE
