#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "mappergpt/lexmatch.hpp"
#include "mappergpt/ontology.hpp"
#include "mappergpt/sssom.hpp"

using namespace mappergpt;

namespace {

const char* kLabelPool[] = {"heart",       "cardiac organ", "lung",     "colon",
                            "wing disc",   "optic lobe",    "tail fin", "caudal fin",
                            "neural tube", "forebrain",     "tubule",   "beta cell"};

// Deterministic ontology whose labels repeat across prefixes, so two
// instances share plenty of normalized strings.
Ontology make_ontology(const std::string& prefix, int n) {
    Ontology onto;
    onto.set_source_name(prefix);
    for (int i = 0; i < n; ++i) {
        Concept c;
        c.id = prefix + ":" + std::to_string(i + 1);
        c.name = std::string(kLabelPool[i % 12]) + " " + std::to_string(i % 97);
        if (i % 3 == 0)
            c.synonyms.push_back({kLabelPool[(i * 7) % 12], SynonymScope::Exact});
        onto.add(std::move(c));
    }
    return onto;
}

MappingSet make_mapping_set(int n) {
    MappingSet set;
    set.set_metadata("mapping_tool", "bench");
    for (int i = 0; i < n; ++i) {
        MappingRecord r;
        r.subject_id = "A:" + std::to_string(i + 1);
        r.predicate_id = std::string(predicates::kExactMatch);
        r.object_id = "B:" + std::to_string(i + 1);
        r.mapping_justification = std::string(justifications::kLexicalMatching);
        r.subject_label = kLabelPool[i % 12];
        r.confidence = (i % 10) / 10.0;
        r.similarity_score = (i % 97) / 97.0;
        if (i % 4 == 0) r.comment = "lexical match: \"heart\" = \"heart\"";
        set.add(std::move(r));
    }
    return set;
}

std::string make_obo_text(int terms) {
    std::string text = "format-version: 1.2\nontology: bench\n\n";
    for (int i = 0; i < terms; ++i) {
        const std::string id = "BM:" + std::to_string(i + 1);
        text += "[Term]\nid: " + id + "\nname: " + kLabelPool[i % 12] + " " +
                std::to_string(i) + "\ndef: \"A synthetic term for parser timing.\" "
                "[bench:0]\nsynonym: \"" +
                std::string(kLabelPool[(i * 5) % 12]) +
                "\" EXACT []\nis_a: BM:1 ! root\n\n";
    }
    return text;
}

void BM_NormalizeLabel(benchmark::State& state) {
    const std::string label = "Embryonic/larval Malpighian tubule, Type-I cell (PC)";
    for (auto _ : state) benchmark::DoNotOptimize(normalize_label(label));
}
BENCHMARK(BM_NormalizeLabel);

void BM_LexicalMatch(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Ontology source = make_ontology("A", n);
    const Ontology target = make_ontology("B", n);
    for (auto _ : state) benchmark::DoNotOptimize(lexical_match(source, target));
}
BENCHMARK(BM_LexicalMatch)->Arg(64)->Arg(256)->Arg(1024);

void BM_WriteSssom(benchmark::State& state) {
    const MappingSet set = make_mapping_set(500);
    for (auto _ : state) benchmark::DoNotOptimize(write_sssom(set));
}
BENCHMARK(BM_WriteSssom);

void BM_ParseSssom(benchmark::State& state) {
    const std::string text = write_sssom(make_mapping_set(500));
    for (auto _ : state) benchmark::DoNotOptimize(parse_sssom(text));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_ParseSssom);

void BM_ParseObo(benchmark::State& state) {
    const std::string text = make_obo_text(500);
    for (auto _ : state) benchmark::DoNotOptimize(parse_obo(text));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_ParseObo);

} // namespace

BENCHMARK_MAIN();
