#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "mathreuse/cli/cli.hpp"
#include "mathreuse/obfuscate/resources.hpp"
#include "mathreuse/util/rng.hpp"
#include "support/doc_gen.hpp"
#include "support/tempdir.hpp"

using namespace mathreuse;
using testing::TempDir;
using testing::write_file;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "mathreuse");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_corpus(const std::filesystem::path& dir, int docs, std::uint64_t seed) {
    util::Rng rng(seed);
    std::string lines;
    for (int i = 0; i < docs; ++i) {
        const json rec = {{"id", "doc" + std::to_string(i)},
                          {"latex", testing::random_document(rng, obfuscate::Lexicon::builtin(), {4, 4})}};
        lines += rec.dump() + "\n";
    }
    write_file(dir / "documents.jsonl", lines);
}

const char* kRecipes = R"([
  {"name": "para", "steps": [{"op": "P"}]},
  [{"op": "DP", "params": {"full_rename": true}}, {"op": "ID"}]
])";

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("version and usage errors") {
        auto v = invoke({"--version"});
        CHECK(v.code == 0);
        CHECK(v.out.find(MATHREUSE_VERSION) != std::string::npos);
        CHECK(invoke({"--help"}).code == 0);
        CHECK(invoke({}).code == cli::kUsageError);
        CHECK(invoke({"frobnicate"}).code == cli::kUsageError);
        CHECK(invoke({"generate", "--corpus", "x"}).code == cli::kUsageError);
    }

    TEST_CASE("parse") {
        TempDir dir("parse");
        write_file(dir / "ok.tex", "Let $a+b=c$ hold.\n\n$$x^2$$\n");
        auto r = invoke({"parse", (dir / "ok.tex").string()});
        CHECK(r.code == 0);
        CHECK(r.out.find("(Relation (OpApply + (Identifier a) (Identifier b)) = (Identifier c))") != std::string::npos);
        CHECK(r.out.find("run 1 [19, 26) $$") != std::string::npos);

        r = invoke({"parse", (dir / "ok.tex").string(), "--json"});
        REQUIRE(r.code == 0);
        const json j = json::parse(r.out);
        REQUIRE(j.size() == 2);
        CHECK(j[0]["start"] == 4);
        CHECK(j[0]["tokens"][0]["offset"] == 5);

        write_file(dir / "bad.tex", "then $x+$ ends");
        r = invoke({"parse", (dir / "bad.tex").string()});
        CHECK(r.code == cli::kDataError);
        CHECK(r.err.find("offset 7") != std::string::npos);

        write_file(dir / "open.tex", "open $x");
        CHECK(invoke({"parse", (dir / "open.tex").string()}).code == cli::kDataError);
        CHECK(invoke({"parse", (dir / "missing.tex").string()}).code == cli::kUsageError);

        write_file(dir / "empty.tex", "");
        r = invoke({"parse", (dir / "empty.tex").string()});
        CHECK(r.code == 0);
        CHECK(r.out.empty());
    }

    TEST_CASE("generate, detect, eval and agree end to end") {
        TempDir dir("e2e");
        write_corpus(dir / "src", 3, 11);
        write_file(dir / "recipes.json", kRecipes);
        write_file(dir / "config.json", R"({"detector": "combined", "k": 5})");

        const auto gen = [&](const std::string& out, const std::string& seed) {
            return invoke({"generate", "--corpus", (dir / "src").string(), "--recipes", (dir / "recipes.json").string(),
                        "--seed", seed, "--out", (dir / out).string()});
        };
        REQUIRE(gen("g1", "5").code == 0);
        REQUIRE(gen("g2", "5").code == 0);
        REQUIRE(gen("g3", "6").code == 0);
        CHECK(cli::output_digest(dir / "g1") == cli::output_digest(dir / "g2"));
        CHECK(cli::output_digest(dir / "g1") != cli::output_digest(dir / "g3"));
        const json manifest = json::parse(slurp(dir / "g1" / "manifest.json"));
        CHECK(manifest["command"] == "generate");
        CHECK(manifest["seed"] == 5);
        CHECK(manifest["output_digest"] == cli::output_digest(dir / "g1"));
        CHECK(slurp(dir / "g1" / "documents.jsonl").find("doc0~para") != std::string::npos);
        CHECK(slurp(dir / "g1" / "documents.jsonl").find("doc2~r1") != std::string::npos);
        CHECK(!slurp(dir / "g1" / "traces.jsonl").empty());

        auto det = invoke({"detect", "--queries", (dir / "g1").string(), "--collection", (dir / "src").string(),
                        "--config", (dir / "config.json").string(), "--out", (dir / "d1").string()});
        REQUIRE(det.code == 0);
        CHECK(std::filesystem::exists(dir / "d1" / "retrieval.jsonl"));
        CHECK(std::filesystem::exists(dir / "d1" / "detections" / "doc0_para.jsonl"));
        const auto dets = cli::read_detections(dir / "d1");
        CHECK(!dets.empty());

        // Detections for the source documents themselves have no truth.
        auto ev = invoke({"eval", "--truth", (dir / "g1" / "cases.jsonl").string(), "--detections",
                       (dir / "d1").string(), "--out", (dir / "report.csv").string()});
        CHECK(ev.code == cli::kUsageError);
        CHECK(ev.err.find("no ground truth") != std::string::npos);

        write_file(dir / "queries" / "documents.jsonl", "");
        {
            std::string lines;
            std::istringstream in(slurp(dir / "g1" / "documents.jsonl"));
            for (std::string l; std::getline(in, l);)
                if (l.find('~') != std::string::npos) lines += l + "\n";
            write_file(dir / "queries" / "documents.jsonl", lines);
        }
        det = invoke({"detect", "--queries", (dir / "queries").string(), "--collection", (dir / "src").string(),
                   "--config", (dir / "config.json").string(), "--out", (dir / "d2").string()});
        REQUIRE(det.code == 0);
        ev = invoke({"eval", "--truth", (dir / "g1" / "cases.jsonl").string(), "--detections", (dir / "d2").string(),
                  "--out", (dir / "report.csv").string(), "--corpus", (dir / "g1").string()});
        REQUIRE(ev.code == 0);
        const std::string csv = slurp(dir / "report.csv");
        CHECK(csv.rfind("detector,operator,presence,cases,f1,g,pd\n", 0) == 0);
        ev = invoke({"eval", "--truth", (dir / "g1" / "cases.jsonl").string(), "--detections", (dir / "d2").string(),
                  "--out", (dir / "report.json").string()});
        REQUIRE(ev.code == 0);
        CHECK(json::parse(slurp(dir / "report.json")).is_array());

        auto ag = invoke({"agree", "--a", (dir / "g1" / "cases.jsonl").string(), "--b",
                       (dir / "g2" / "cases.jsonl").string()});
        REQUIRE(ag.code == 0);
        const json a = json::parse(ag.out);
        CHECK(a["kappa"] == doctest::Approx(1.0));
        CHECK(a["token_jaccard"] == doctest::Approx(1.0));

        write_corpus(dir / "other", 1, 99);
        write_file(dir / "one.jsonl",
                   R"({"src_doc":"a","src_start":0,"src_end":3,"insp_doc":"b","insp_start":0,"insp_end":3,"ops":["P"],"case_type":"text"})"
                   "\n");
        CHECK(invoke({"agree", "--a", (dir / "one.jsonl").string(), "--b", (dir / "g1" / "cases.jsonl").string()}).code ==
              cli::kUsageError);
    }

    TEST_CASE("generate and detect reject bad inputs") {
        TempDir dir("bad");
        write_corpus(dir / "src", 1, 3);
        write_file(dir / "recipes.json", R"([[{"op": "P"}], [{"op": "XX"}]])");
        auto r = invoke({"generate", "--corpus", (dir / "src").string(), "--recipes", (dir / "recipes.json").string(),
                      "--seed", "1", "--out", (dir / "o").string()});
        CHECK(r.code == cli::kUsageError);
        CHECK(r.err.find("recipe 1") != std::string::npos);

        write_file(dir / "recipes.json", "{not json");
        CHECK(invoke({"generate", "--corpus", (dir / "src").string(), "--recipes", (dir / "recipes.json").string(),
                   "--seed", "1", "--out", (dir / "o").string()})
                  .code == cli::kUsageError);

        write_file(dir / "empty" / "documents.jsonl", "");
        write_file(dir / "config.json", R"({"detector": "git"})");
        r = invoke({"detect", "--queries", (dir / "src").string(), "--collection", (dir / "empty").string(), "--config",
                 (dir / "config.json").string(), "--out", (dir / "d").string()});
        CHECK(r.code == cli::kUsageError);

        write_file(dir / "config.json", R"({"detector": "git", "min_tile": 0})");
        r = invoke({"detect", "--queries", (dir / "src").string(), "--collection", (dir / "src").string(), "--config",
                 (dir / "config.json").string(), "--out", (dir / "d").string()});
        CHECK(r.code == cli::kUsageError);

        write_file(dir / "broken" / "documents.jsonl", "{\"id\": 3}\n");
        r = invoke({"detect", "--queries", (dir / "broken").string(), "--collection", (dir / "src").string(), "--config",
                 (dir / "config.json").string(), "--out", (dir / "d").string()});
        CHECK(r.code == cli::kDataError);
        CHECK(r.err.find("documents.jsonl:1") != std::string::npos);
    }

    TEST_CASE("detection records round-trip") {
        detect::Detection d{{"s", 3, 9}, {"i", 0, 4}, 2.5, "git"};
        const auto back = cli::detection_from_json(cli::detection_to_json(d), "f", 1);
        CHECK(back.src.doc_id == "s");
        CHECK(back.src.end == 9);
        CHECK(back.insp.start == 0);
        CHECK(back.score == 2.5);
        CHECK(back.detector == "git");
        CHECK_THROWS(cli::detection_from_json(R"({"src_doc":"s"})", "f", 1));
        CHECK_THROWS(cli::detection_from_json(R"({"src_doc":"s","src_start":5,"src_end":2,"insp_doc":"i","insp_start":0,"insp_end":1,"score":1,"detector":"git"})", "f", 1));
    }
}
