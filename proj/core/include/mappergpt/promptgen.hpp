#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mappergpt/categories.hpp"
#include "mappergpt/ontology.hpp"

namespace mappergpt {

/// One in-context example shown in the review prompt. Blocks are stored as
/// literal text, not regenerated from an ontology.
struct PromptExample {
    std::string concept_a_block;
    std::string concept_b_block;
    Category expected_category = Category::Different;
    Confidence expected_confidence = Confidence::High;
    std::string similarities;
    std::string differences;
};

/// Textual description of a concept, one property per line in fixed order:
/// id, name, def, synonyms (joined by " ; "), is_a (parent names or ids,
/// joined by " ; "), then one relationship line per relationship. Lines for
/// absent fields are omitted. Parent and relationship targets render as
/// names when they resolve in the ontology, verbatim otherwise; relationship
/// predicates render with underscores as spaces ("part_of" -> "part of").
std::string describe(const Concept& term, const Ontology& ontology);

/// The built-in examples list: the single wing/aeroplane example.
const std::vector<PromptExample>& default_examples();

/// Renders an example as its two concept blocks plus the four answer lines.
std::string render_example(const PromptExample& example);

/// Full review prompt: question line, answer-format block, instruction
/// sentence, Examples section, then the two described concepts.
std::string generate_prompt(const Concept& a, const Concept& b,
                            const Ontology& o1, const Ontology& o2,
                            const std::vector<PromptExample>& examples);

/// Parses an examples file: per example, a `[Concept A]` block, a
/// `[Concept B]` block, then category/confidence/similarities/differences
/// answer lines. Throws DataError on malformed input.
std::vector<PromptExample> parse_examples_file(std::string_view text);

} // namespace mappergpt
