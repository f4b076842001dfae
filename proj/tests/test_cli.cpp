#include <atomic>
#include <cstdlib>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "doctest.h"

#include "mappergpt/ontology.hpp"
#include "mappergpt/promptgen.hpp"
#include "mappergpt/sssom.hpp"
#include "mappergpt/util.hpp"
#include "testutil.hpp"

using namespace mappergpt;
using testutil::exact;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the installed command-line binary with stdout/stderr captured.
CliResult run_tool(const std::vector<std::string>& args) {
    static testutil::TempDir capture_dir;
    static std::atomic<unsigned> n{0};
    const unsigned i = n.fetch_add(1);
    const std::string out_file = (capture_dir / ("out-" + std::to_string(i))).string();
    const std::string err_file = (capture_dir / ("err-" + std::to_string(i))).string();

    std::string command = std::string("'") + MAPPERGPT_CLI_PATH + "'";
    for (const std::string& arg : args) command += " '" + arg + "'";
    command += " >'" + out_file + "' 2>'" + err_file + "'";

    const int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_file(out_file);
    result.err = read_file(err_file);
    return result;
}

std::string fixture(const char* name) { return (testutil::data_dir() / name).string(); }

} // namespace

TEST_SUITE("cli") {

TEST_CASE("version and help") {
    const CliResult version = run_tool({"-V"});
    CHECK(version.exit_code == 0);
    CHECK(version.out == "mappergpt 0.1.0\n");

    const CliResult help = run_tool({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("lexmatch") != std::string::npos);
    CHECK(help.out.find("categorize-mappings") != std::string::npos);
}

TEST_CASE("argument errors exit 1") {
    CHECK(run_tool({}).exit_code == 1);
    CHECK(run_tool({"frobnicate"}).exit_code == 1);
    // missing required options
    CHECK(run_tool({"lexmatch", "--source", fixture("gaz.obo")}).exit_code == 1);
    CHECK(run_tool({"eval", "--pred", fixture("gaz.obo")}).exit_code == 1);
    // value outside the closed backend vocabulary
    testutil::TempDir dir;
    const CliResult bad_backend = run_tool(
        {"categorize-mappings", "--model", "m", "-i", "x", "-o", (dir / "o").string(),
         "--source", "s", "--target", "t", "--backend", "telepathy"});
    CHECK(bad_backend.exit_code == 1);
}

TEST_CASE("lexmatch writes candidates for the city/organ homonym") {
    testutil::TempDir dir;
    const std::string output = (dir / "candidates.tsv").string();
    const CliResult result = run_tool({"lexmatch", "--source", fixture("gaz.obo"),
                                       "--target", fixture("uberon_mini.obo"), "-o",
                                       output});
    REQUIRE(result.exit_code == 0);
    CHECK(result.err.find("1 candidate mappings written to") != std::string::npos);

    const MappingSet candidates = load_sssom_file(output);
    REQUIRE(candidates.size() == 1);
    CHECK(candidates.records()[0].subject_id == "GAZ:00002758");
    CHECK(candidates.records()[0].predicate_id == "skos:exactMatch");
    CHECK(candidates.records()[0].object_id == "UBERON:0001155");
}

TEST_CASE("lexmatch rejects a corrupt ontology with exit 2") {
    testutil::TempDir dir;
    const std::string bad = (dir / "bad.obo").string();
    write_file_atomic(bad,
                      "[Term]\nid: X:1\nname: one\n\n[Term]\nid: X:1\nname: again\n");
    const CliResult result = run_tool(
        {"lexmatch", "--source", bad, "--target", bad, "-o", (dir / "out.tsv").string()});
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("error: ") != std::string::npos);
    CHECK(result.err.find("duplicate concept id: X:1") != std::string::npos);
}

TEST_CASE("missing input files exit 2 and name the path") {
    testutil::TempDir dir;
    const std::string missing = (dir / "nowhere.tsv").string();
    const CliResult result = run_tool({"eval", "--pred", missing, "--gold", missing});
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("error: ") != std::string::npos);
    CHECK(result.err.find("nowhere.tsv") != std::string::npos);
}

TEST_CASE("describe prints one concept block") {
    const CliResult result = run_tool(
        {"describe", "--ontology", fixture("fbbt.obo"), "--id", "FBbt:00001906"});
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.rfind("id: FBbt:00001906\nname: embryonic/larval Malpighian tubule "
                           "Type I cell\n",
                           0) == 0);
    CHECK(result.out.find("\nsynonyms: PC ; ") != std::string::npos);
    CHECK(result.out.back() == '\n');

    const CliResult missing = run_tool(
        {"describe", "--ontology", fixture("fbbt.obo"), "--id", "FBbt:99999999"});
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("concept not found: FBbt:99999999") != std::string::npos);
}

TEST_CASE("eval of a set against itself prints a perfect report") {
    testutil::TempDir dir;
    MappingSet set;
    set.add(exact("A:1", "B:1"));
    set.add(exact("A:2", "B:2"));
    const std::string path = (dir / "set.tsv").string();
    save_sssom_file(path, set);

    const CliResult result =
        run_tool({"eval", "--pred", path, "--gold", path, "--exact-only"});
    REQUIRE(result.exit_code == 0);
    CHECK(result.out ==
          "true_positives: 2\n"
          "false_positives: 0\n"
          "false_negatives: 0\n"
          "precision: 1.000000\n"
          "recall: 1.000000\n"
          "f1: 1.000000\n");

    SUBCASE("TSV report written to a file") {
        const std::string report = (dir / "report.tsv").string();
        const CliResult tsv = run_tool(
            {"eval", "--pred", path, "--gold", path, "--tsv", "-o", report});
        REQUIRE(tsv.exit_code == 0);
        CHECK(tsv.out.empty());
        CHECK(read_file(report) ==
              "true_positives\tfalse_positives\tfalse_negatives\tprecision\trecall\tf1\n"
              "2\t0\t0\t1.000000\t1.000000\t1.000000\n");
    }
    SUBCASE("empty gold set exits 2") {
        const std::string empty = (dir / "empty.tsv").string();
        save_sssom_file(empty, MappingSet{});
        const CliResult bad = run_tool({"eval", "--pred", path, "--gold", empty});
        CHECK(bad.exit_code == 2);
        CHECK(bad.err.find("error: gold set is empty") != std::string::npos);
    }
}

TEST_CASE("threshold-scan writes the curve CSV") {
    testutil::TempDir dir;
    MappingSet gold;
    gold.add(exact("A:1", "B:1"));
    MappingSet scored;
    {
        MappingRecord hit = exact("A:1", "B:1");
        hit.similarity_score = 0.9;
        scored.add(std::move(hit));
        MappingRecord noise = exact("A:2", "B:2");
        noise.similarity_score = 0.2;
        scored.add(std::move(noise));
    }
    const std::string scored_path = (dir / "scored.tsv").string();
    const std::string gold_path = (dir / "gold.tsv").string();
    const std::string curve_path = (dir / "curve.csv").string();
    save_sssom_file(scored_path, scored);
    save_sssom_file(gold_path, gold);

    const CliResult result = run_tool({"threshold-scan", "--scored", scored_path,
                                       "--gold", gold_path, "-o", curve_path});
    REQUIRE(result.exit_code == 0);
    CHECK(result.err.find("2 thresholds scanned; best 0.9 (f1 1.000000)") !=
          std::string::npos);
    CHECK(read_file(curve_path) ==
          "threshold,tp,fp,fn,precision,recall,f1\n"
          "0.200000,1,1,0,0.500000,1.000000,0.666667\n"
          "0.900000,1,0,0,1.000000,1.000000,1.000000\n");
}

TEST_CASE("make-testset bridges two mapping files") {
    testutil::TempDir dir;
    MappingSet left;
    left.add(exact("FBbt:00000111", "UBERON:0000924"));
    MappingSet right;
    right.add(exact("ZFA:0000016", "UBERON:0000924"));
    const std::string left_path = (dir / "left.tsv").string();
    const std::string right_path = (dir / "right.tsv").string();
    const std::string gold_path = (dir / "gold.tsv").string();
    save_sssom_file(left_path, left);
    save_sssom_file(right_path, right);

    const CliResult result = run_tool(
        {"make-testset", "--left", left_path, "--right", right_path, "-o", gold_path});
    REQUIRE(result.exit_code == 0);
    CHECK(result.err.find("1 gold mappings written to") != std::string::npos);

    const MappingSet gold = load_sssom_file(gold_path);
    REQUIRE(gold.size() == 1);
    CHECK(gold.records()[0].subject_id == "FBbt:00000111");
    CHECK(gold.records()[0].object_id == "ZFA:0000016");
    CHECK(gold.records()[0].predicate_id == "skos:exactMatch");

    SUBCASE("disjoint bridge ids warn and still exit 0") {
        MappingSet stranded;
        stranded.add(exact("ZFA:0000016", "XAO:0000001"));
        const std::string stranded_path = (dir / "stranded.tsv").string();
        save_sssom_file(stranded_path, stranded);
        const CliResult warned =
            run_tool({"make-testset", "--left", left_path, "--right", stranded_path,
                      "-o", (dir / "empty.tsv").string()});
        CHECK(warned.exit_code == 0);
        CHECK(warned.err.find(
                  "warning: no shared bridge ids between the two mapping sets") !=
              std::string::npos);
        CHECK(load_sssom_file((dir / "empty.tsv").string()).empty());
    }
}

TEST_CASE("categorize-mappings runs the full pipeline against the mock backend") {
    testutil::TempDir dir;

    // 1. lexical candidates between the fly and fish fixtures
    const std::string candidates_path = (dir / "candidates.tsv").string();
    const CliResult lex = run_tool({"lexmatch", "--source", fixture("fbbt.obo"),
                                    "--target", fixture("zfa.obo"), "-o",
                                    candidates_path});
    REQUIRE(lex.exit_code == 0);
    const MappingSet candidates = load_sssom_file(candidates_path);
    REQUIRE(candidates.size() == 1);
    CHECK(candidates.records()[0].subject_id == "FBbt:00001906");
    CHECK(candidates.records()[0].object_id == "ZFA:0000320");

    // 2. stage the canned review for exactly the prompt the tool will send
    const Ontology fly = load_obo_file(fixture("fbbt.obo"));
    const Ontology fish = load_obo_file(fixture("zfa.obo"));
    const std::string prompt =
        generate_prompt(*fly.find("FBbt:00001906"), *fish.find("ZFA:0000320"), fly, fish,
                        default_examples());
    const std::string response =
        "category: DIFFERENT\n"
        "confidence: HIGH\n"
        "similarities: NONE\n"
        "differences: A is a type of cell in the embryonic/larval Malpighian tubules; "
        "B is a diencephalic tract in the zebrafish brain.";
    const testutil::TempDir mock_dir;
    write_file_atomic((mock_dir / "review.prompt").string(), prompt + "\n");
    write_file_atomic((mock_dir / "review.response").string(), response + "\n");

    // 3. review the candidates
    const std::string refined_path = (dir / "refined.tsv").string();
    const CliResult categorize = run_tool(
        {"categorize-mappings", "--model", "gpt-4", "-i", candidates_path, "-o",
         refined_path, "--source", fixture("fbbt.obo"), "--target", fixture("zfa.obo"),
         "--backend", "mock", "--mock-dir", mock_dir.path().string()});
    REQUIRE(categorize.exit_code == 0);
    CHECK(categorize.err.find("reviewed 1/1 records (0 parse failures, 0 unresolved, "
                              "0 backend failures)") != std::string::npos);

    const MappingSet refined = load_sssom_file(refined_path);
    REQUIRE(refined.size() == 1);
    const MappingRecord& r = refined.records()[0];
    CHECK(r.subject_id == "FBbt:00001906");
    CHECK(r.predicate_id == "owl:differentFrom");
    CHECK(r.object_id == "ZFA:0000320");
    CHECK(r.mapping_justification == "semapv:MappingReview");
    REQUIRE(r.confidence.has_value());
    CHECK(*r.confidence == doctest::Approx(0.9));
    CHECK(r.comment ==
          "differences: A is a type of cell in the embryonic/larval Malpighian tubules; "
          "B is a diencephalic tract in the zebrafish brain.");
    bool model_stamped = false;
    for (const auto& [key, value] : refined.metadata())
        model_stamped |= (key == "model" && value == "gpt-4");
    CHECK(model_stamped);

    // 4. score the reviewed output against a one-row gold set
    MappingSet gold;
    gold.add(exact("FBbt:00001906", "ZFA:0000320"));
    const std::string gold_path = (dir / "gold.tsv").string();
    save_sssom_file(gold_path, gold);
    const CliResult eval = run_tool(
        {"eval", "--pred", refined_path, "--gold", gold_path, "--exact-only"});
    REQUIRE(eval.exit_code == 0);
    // the review demoted the only candidate, so no exactMatch rows remain predicted
    CHECK(eval.out.find("true_positives: 0") != std::string::npos);
    CHECK(eval.out.find("f1: 0.000000") != std::string::npos);
}

TEST_CASE("categorize-mappings backend failures and flag combinations") {
    testutil::TempDir dir;
    MappingSet candidates;
    candidates.add(testutil::record("FBbt:00001906",
                                    std::string(predicates::kExactMatch), "ZFA:0000320"));
    const std::string candidates_path = (dir / "candidates.tsv").string();
    save_sssom_file(candidates_path, candidates);
    const std::string output = (dir / "refined.tsv").string();

    SUBCASE("mock backend without --mock-dir exits 1") {
        const CliResult result = run_tool(
            {"categorize-mappings", "--model", "m", "-i", candidates_path, "-o", output,
             "--source", fixture("fbbt.obo"), "--target", fixture("zfa.obo"),
             "--backend", "mock"});
        CHECK(result.exit_code == 1);
        CHECK(result.err.find("error: --backend mock requires --mock-dir") !=
              std::string::npos);
    }
    SUBCASE("cache-only backend without --cache exits 1") {
        const CliResult result = run_tool(
            {"categorize-mappings", "--model", "m", "-i", candidates_path, "-o", output,
             "--source", fixture("fbbt.obo"), "--target", fixture("zfa.obo"),
             "--backend", "cache-only"});
        CHECK(result.exit_code == 1);
        CHECK(result.err.find("error: --backend cache-only requires --cache") !=
              std::string::npos);
    }
    SUBCASE("strict mock miss exits 3") {
        const testutil::TempDir empty_mock;
        const CliResult result = run_tool(
            {"categorize-mappings", "--model", "m", "-i", candidates_path, "-o", output,
             "--source", fixture("fbbt.obo"), "--target", fixture("zfa.obo"),
             "--backend", "mock", "--mock-dir", empty_mock.path().string()});
        CHECK(result.exit_code == 3);
        CHECK(result.err.find("backend error") != std::string::npos);
        CHECK(result.err.find("no mock response for prompt") != std::string::npos);
    }
    SUBCASE("lenient mock miss keeps the candidate and exits 0") {
        const testutil::TempDir empty_mock;
        const CliResult result = run_tool(
            {"categorize-mappings", "--model", "m", "-i", candidates_path, "-o", output,
             "--source", fixture("fbbt.obo"), "--target", fixture("zfa.obo"),
             "--backend", "mock", "--mock-dir", empty_mock.path().string(),
             "--lenient"});
        REQUIRE(result.exit_code == 0);
        CHECK(result.err.find("1 backend failures") != std::string::npos);
        const MappingSet refined = load_sssom_file(output);
        REQUIRE(refined.size() == 1);
        CHECK(refined.records()[0].predicate_id == "skos:exactMatch");
        REQUIRE(refined.records()[0].comment.has_value());
        CHECK(refined.records()[0].comment->rfind("review_failed: backend: ", 0) == 0);
    }
}

} // TEST_SUITE
