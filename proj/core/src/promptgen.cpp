#include "mappergpt/promptgen.hpp"

#include "mappergpt/errors.hpp"
#include "mappergpt/util.hpp"

namespace mappergpt {

namespace {

constexpr std::string_view kPromptHeader =
    "What is the relationship between the two specified concepts?\n"
    "\n"
    "Give your answer in the form:\n"
    "\n"
    "category: <one of: EXACT_MATCH, BROADER_THAN, NARROWER_THAN, RELATED_TO, "
    "DIFFERENT>\n"
    "confidence: <one of: LOW, HIGH, MEDIUM>\n"
    "similarities: <semicolon-separated list of similarities>\n"
    "differences: <semicolon-separated list of differences>\n"
    "\n"
    "Make use of all provided information, including the concept names, definitions, "
    "and relationships.\n"
    "\n"
    "Examples:\n";

std::string resolve_name(const std::string& target, const Ontology& ontology) {
    const Concept* c = ontology.find(target);
    return c ? c->name : target;
}

std::string spaced_predicate(const std::string& predicate) {
    std::string out = predicate;
    for (char& c : out)
        if (c == '_') c = ' ';
    return out;
}

} // namespace

std::string describe(const Concept& term, const Ontology& ontology) {
    std::string out = "id: " + term.id + "\nname: " + term.name;
    if (term.definition && !term.definition->empty())
        out += "\ndef: " + *term.definition;
    if (!term.synonyms.empty()) {
        out += "\nsynonyms: ";
        for (size_t i = 0; i < term.synonyms.size(); ++i) {
            if (i) out += " ; ";
            out += term.synonyms[i].text;
        }
    }
    if (!term.parents.empty()) {
        out += "\nis_a: ";
        for (size_t i = 0; i < term.parents.size(); ++i) {
            if (i) out += " ; ";
            out += resolve_name(term.parents[i], ontology);
        }
    }
    for (const Relationship& rel : term.relationships) {
        out += "\nrelationship: " + spaced_predicate(rel.predicate) + " " +
               resolve_name(rel.target, ontology);
    }
    return out;
}

const std::vector<PromptExample>& default_examples() {
    static const std::vector<PromptExample> examples = {{
        "id: F00:125\n"
        "name: wing\n"
        "def: part of a bird that is flapped to enable flight\n"
        "is_a: Limb\n"
        "relationship: part_of Bird\n"
        "relationship: has_part Feather",
        "id: BAR:458\n"
        "name: wing\n"
        "relationship: part_of Aeroplane",
        Category::Different,
        Confidence::High,
        "function",
        "A is an anatomical part; B is a part of a vehicle",
    }};
    return examples;
}

std::string render_example(const PromptExample& example) {
    std::string out = "[Concept A]\n" + example.concept_a_block + "\n\n[Concept B]\n" +
                      example.concept_b_block + "\n\ncategory: ";
    out += to_string(example.expected_category);
    out += "\nconfidence: ";
    out += to_string(example.expected_confidence);
    out += "\nsimilarities: " + example.similarities;
    out += "\ndifferences: " + example.differences;
    return out;
}

std::string generate_prompt(const Concept& a, const Concept& b, const Ontology& o1,
                            const Ontology& o2,
                            const std::vector<PromptExample>& examples) {
    std::string out{kPromptHeader};
    for (const PromptExample& e : examples) {
        out.push_back('\n');
        out += render_example(e);
        out.push_back('\n');
    }
    out += "\nHere are the two concepts:\n\n[Concept A]\n" + describe(a, o1) +
           "\n\n[Concept B]\n" + describe(b, o2);
    return out;
}

std::vector<PromptExample> parse_examples_file(std::string_view text) {
    std::vector<PromptExample> examples;
    const auto lines = split_lines(text);

    enum class State { WantA, InA, InB, Answers } state = State::WantA;
    PromptExample current;
    std::optional<Confidence> confidence;
    std::optional<std::string> similarities, differences;

    const auto begin_example = [&] {
        current = PromptExample{};
        current.concept_a_block.clear();
        current.concept_b_block.clear();
        confidence.reset();
        similarities.reset();
        differences.reset();
        state = State::InA;
    };
    const auto finish_example = [&](size_t line_no) {
        if (!confidence)
            throw DataError("example ending at line " + std::to_string(line_no) +
                            " has no confidence line");
        current.expected_confidence = *confidence;
        current.similarities = similarities.value_or("");
        current.differences = differences.value_or("");
        examples.push_back(current);
        state = State::WantA;
    };
    const auto append_block = [](std::string& block, std::string_view line) {
        if (!block.empty()) block.push_back('\n');
        block += line;
    };

    for (size_t i = 0; i < lines.size(); ++i) {
        const std::string_view line = trim(lines[i]);
        const std::string loc = "line " + std::to_string(i + 1);
        if (line.empty()) continue;

        switch (state) {
            case State::WantA:
                if (line != "[Concept A]")
                    throw DataError(loc + ": expected [Concept A], got '" +
                                    std::string(line) + "'");
                begin_example();
                break;
            case State::InA:
                if (line == "[Concept B]") {
                    if (current.concept_a_block.empty())
                        throw DataError(loc + ": empty [Concept A] block");
                    state = State::InB;
                } else if (line == "[Concept A]") {
                    throw DataError(loc + ": [Concept A] repeated before [Concept B]");
                } else {
                    append_block(current.concept_a_block, line);
                }
                break;
            case State::InB: {
                const size_t colon = line.find(':');
                if (colon != std::string_view::npos &&
                    iequals(trim(line.substr(0, colon)), "category")) {
                    if (current.concept_b_block.empty())
                        throw DataError(loc + ": empty [Concept B] block");
                    const auto cat = parse_category(line.substr(colon + 1));
                    if (!cat)
                        throw DataError(loc + ": unrecognized category: '" +
                                        std::string(trim(line.substr(colon + 1))) + "'");
                    current.expected_category = *cat;
                    state = State::Answers;
                } else {
                    append_block(current.concept_b_block, line);
                }
                break;
            }
            case State::Answers: {
                if (line == "[Concept A]") {
                    finish_example(i + 1);
                    begin_example();
                    break;
                }
                const size_t colon = line.find(':');
                if (colon == std::string_view::npos)
                    throw DataError(loc + ": expected 'key: value' answer line");
                const std::string_view key = trim(line.substr(0, colon));
                const std::string_view value = trim(line.substr(colon + 1));
                if (iequals(key, "confidence")) {
                    const auto conf = parse_confidence(value);
                    if (!conf)
                        throw DataError(loc + ": unrecognized confidence: '" +
                                        std::string(value) + "'");
                    confidence = conf;
                } else if (iequals(key, "similarities")) {
                    similarities = std::string(value);
                } else if (iequals(key, "differences")) {
                    differences = std::string(value);
                } else {
                    throw DataError(loc + ": unexpected answer line key: '" +
                                    std::string(key) + "'");
                }
                break;
            }
        }
    }

    if (state == State::Answers) {
        finish_example(lines.size());
    } else if (state != State::WantA) {
        throw DataError("unterminated example at end of file");
    }
    if (examples.empty()) throw DataError("no examples in file");
    return examples;
}

} // namespace mappergpt
