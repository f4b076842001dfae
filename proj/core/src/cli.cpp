#include "CLI11.hpp"

#include "mappergpt/cli.hpp"

#include <filesystem>
#include <iostream>
#include <memory>

#include "mappergpt/errors.hpp"
#include "mappergpt/eval.hpp"
#include "mappergpt/lexmatch.hpp"
#include "mappergpt/llm.hpp"
#include "mappergpt/ontology.hpp"
#include "mappergpt/promptgen.hpp"
#include "mappergpt/refine.hpp"
#include "mappergpt/sssom.hpp"
#include "mappergpt/util.hpp"

namespace mappergpt {

namespace {

// flag combinations the option parser cannot express statically
struct UsageError {
    std::string message;
};

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

struct LexmatchArgs {
    std::string source, target, output;
};

struct CategorizeArgs {
    std::string model, input, output, source, target;
    std::string backend = "http";
    std::string mock_dir, cache, examples;
    double temperature = 0.0;
    int parallel = 1;
    bool lenient = false;
};

struct EvalArgs {
    std::string pred, gold, output;
    bool exact_only = false;
    bool undirected = false;
    bool tsv = false;
};

struct ScanArgs {
    std::string scored, gold, output;
};

struct TestsetArgs {
    std::string left, right, output;
};

struct DescribeArgs {
    std::string ontology, id;
};

int run_lexmatch(const LexmatchArgs& a) {
    std::vector<std::string> warnings;
    const Ontology source = load_obo_file(a.source, &warnings);
    const Ontology target = load_obo_file(a.target, &warnings);
    const MappingSet candidates = lexical_match(source, target);
    save_sssom_file(a.output, candidates);
    print_warnings(warnings);
    std::cerr << candidates.size() << " candidate mappings written to " << a.output
              << "\n";
    return 0;
}

int run_categorize(const CategorizeArgs& a) {
    std::vector<std::string> warnings;
    const MappingSet input = load_sssom_file(a.input, &warnings);
    const Ontology source = load_obo_file(a.source, &warnings);
    const Ontology target = load_obo_file(a.target, &warnings);

    RefineConfig config;
    config.model_name = a.model;
    config.temperature = a.temperature;
    config.cache_dir = a.cache;
    config.parallel = a.parallel;
    config.lenient = a.lenient;
    if (!a.examples.empty()) config.examples = parse_examples_file(read_file(a.examples));

    std::unique_ptr<CompletionBackend> backend;
    if (a.backend == "mock") {
        if (a.mock_dir.empty())
            throw UsageError{"--backend mock requires --mock-dir"};
        backend = std::make_unique<MockBackend>(a.mock_dir);
    } else if (a.backend == "cache-only") {
        if (a.cache.empty())
            throw UsageError{"--backend cache-only requires --cache"};
        backend = std::make_unique<CacheOnlyBackend>();
    } else {
        backend = std::make_unique<HttpBackend>(HttpBackend::from_env());
    }

    const RefineOutcome outcome =
        refine_mappings(input, source, target, *backend, config, &warnings);
    save_sssom_file(a.output, outcome.mappings);
    print_warnings(warnings);
    const RefineSummary& s = outcome.summary;
    std::cerr << "reviewed " << s.reviewed << "/" << s.total << " records ("
              << s.parse_failures << " parse failures, " << s.unresolved_passthrough
              << " unresolved, " << s.backend_failures << " backend failures) -> "
              << a.output << "\n";
    return 0;
}

int run_eval(const EvalArgs& a) {
    std::vector<std::string> warnings;
    const MappingSet pred = load_sssom_file(a.pred, &warnings);
    const MappingSet gold = load_sssom_file(a.gold, &warnings);
    CompareOptions options;
    options.exact_only = a.exact_only;
    options.undirected = a.undirected;
    const EvalReport report = compare(pred, gold, options);
    const std::string text = a.tsv ? write_report_tsv(report) : write_report(report);
    print_warnings(warnings);
    if (a.output.empty())
        std::cout << text;
    else
        write_file_atomic(a.output, text);
    return 0;
}

int run_scan(const ScanArgs& a) {
    std::vector<std::string> warnings;
    const MappingSet scored = load_sssom_file(a.scored, &warnings);
    const MappingSet gold = load_sssom_file(a.gold, &warnings);
    const ThresholdCurve curve = threshold_scan(scored, gold);
    write_file_atomic(a.output, write_curve_csv(curve));
    print_warnings(warnings);
    std::cerr << curve.points.size() << " thresholds scanned; best "
              << format_trimmed(curve.best_threshold, 6) << " (f1 "
              << format_fixed(curve.best_f1, 6) << ") -> " << a.output << "\n";
    return 0;
}

int run_testset(const TestsetArgs& a) {
    std::vector<std::string> warnings;
    const MappingSet left = load_sssom_file(a.left, &warnings);
    const MappingSet right = load_sssom_file(a.right, &warnings);
    const MappingSet gold = bridge_testset(left, right, &warnings);
    save_sssom_file(a.output, gold);
    print_warnings(warnings);
    std::cerr << gold.size() << " gold mappings written to " << a.output << "\n";
    return 0;
}

int run_describe(const DescribeArgs& a) {
    std::vector<std::string> warnings;
    const Ontology onto = load_obo_file(a.ontology, &warnings);
    const Concept* term = onto.find(a.id);
    if (!term) throw DataError("concept not found: " + a.id);
    print_warnings(warnings);
    std::cout << describe(*term, onto) << "\n";
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"ontology mapping toolkit: lexical candidates, model review, evaluation"};
    app.set_version_flag("-V,--version", "mappergpt 0.1.0");
    app.require_subcommand(1);

    LexmatchArgs lex_args;
    auto* lex = app.add_subcommand("lexmatch",
                                   "generate high-recall lexical candidate mappings");
    lex->add_option("--source", lex_args.source, "source ontology (OBO subset)")
        ->required();
    lex->add_option("--target", lex_args.target, "target ontology (OBO subset)")
        ->required();
    lex->add_option("-o,--output", lex_args.output, "candidate mappings (SSSOM TSV)")
        ->required();

    CategorizeArgs cat_args;
    auto* cat = app.add_subcommand(
        "categorize-mappings", "review candidate mappings with a completion backend");
    cat->add_option("--model", cat_args.model, "model name sent to the backend")
        ->required();
    cat->add_option("-i,--input", cat_args.input, "candidate mappings (SSSOM TSV)")
        ->required();
    cat->add_option("-o,--output", cat_args.output, "reviewed mappings (SSSOM TSV)")
        ->required();
    cat->add_option("--source", cat_args.source, "source ontology (OBO subset)")
        ->required();
    cat->add_option("--target", cat_args.target, "target ontology (OBO subset)")
        ->required();
    cat->add_option("--backend", cat_args.backend,
                    "completion backend (http, mock, cache-only)")
        ->check(CLI::IsMember({"http", "mock", "cache-only"}))
        ->capture_default_str();
    cat->add_option("--mock-dir", cat_args.mock_dir,
                    "fixture directory for the mock backend");
    cat->add_option("--cache", cat_args.cache, "response cache directory");
    cat->add_option("--temperature", cat_args.temperature, "sampling temperature")
        ->capture_default_str();
    cat->add_option("--parallel", cat_args.parallel, "maximum in-flight reviews")
        ->capture_default_str();
    cat->add_flag("--lenient", cat_args.lenient,
                  "keep-and-flag records on backend failure instead of aborting");
    cat->add_option("--examples", cat_args.examples, "in-context examples file");

    EvalArgs eval_args;
    auto* ev = app.add_subcommand("eval", "score predicted mappings against a gold set");
    ev->add_option("--pred", eval_args.pred, "predicted mappings (SSSOM TSV)")->required();
    ev->add_option("--gold", eval_args.gold, "gold mappings (SSSOM TSV)")->required();
    ev->add_flag("--exact-only", eval_args.exact_only,
                 "restrict both sets to skos:exactMatch before counting");
    ev->add_flag("--undirected", eval_args.undirected,
                 "ignore pair orientation when comparing");
    ev->add_flag("--tsv", eval_args.tsv, "emit the report as single-row TSV");
    ev->add_option("-o,--output", eval_args.output,
                   "report file (default: standard output)");

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("threshold-scan",
                                    "sweep similarity-score cutoffs against a gold set");
    scan->add_option("--scored", scan_args.scored, "scored mappings (SSSOM TSV)")
        ->required();
    scan->add_option("--gold", scan_args.gold, "gold mappings (SSSOM TSV)")->required();
    scan->add_option("-o,--output", scan_args.output, "curve file (CSV)")->required();

    TestsetArgs testset_args;
    auto* testset = app.add_subcommand(
        "make-testset", "join two mapping sets through shared bridge ids into a gold set");
    testset->add_option("--left", testset_args.left, "left-to-bridge mappings (SSSOM TSV)")
        ->required();
    testset
        ->add_option("--right", testset_args.right, "right-to-bridge mappings (SSSOM TSV)")
        ->required();
    testset->add_option("-o,--output", testset_args.output, "gold mappings (SSSOM TSV)")
        ->required();

    DescribeArgs describe_args;
    auto* desc =
        app.add_subcommand("describe", "print the textual description of one concept");
    desc->add_option("--ontology", describe_args.ontology, "ontology (OBO subset)")
        ->required();
    desc->add_option("--id", describe_args.id, "concept CURIE")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (lex->parsed()) return run_lexmatch(lex_args);
        if (cat->parsed()) return run_categorize(cat_args);
        if (ev->parsed()) return run_eval(eval_args);
        if (scan->parsed()) return run_scan(scan_args);
        if (testset->parsed()) return run_testset(testset_args);
        if (desc->parsed()) return run_describe(describe_args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.message << "\n";
        return 1;
    } catch (const BackendError& e) {
        std::cerr << "backend error (" << to_string(e.kind()) << "): " << e.what()
                  << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace mappergpt
