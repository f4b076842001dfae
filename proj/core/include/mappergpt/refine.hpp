#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mappergpt/categories.hpp"
#include "mappergpt/errors.hpp"
#include "mappergpt/llm.hpp"
#include "mappergpt/ontology.hpp"
#include "mappergpt/promptgen.hpp"
#include "mappergpt/sssom.hpp"

namespace mappergpt {

/// Parsed model response.
struct RefinementResult {
    Category category = Category::Different;
    Confidence confidence = Confidence::Low;
    std::vector<std::string> similarities;
    std::vector<std::string> differences;
    std::string raw_response;
};

/// A response whose category line is missing or unrecognizable. Carries the
/// raw response for auditing.
class ResponseParseError : public DataError {
public:
    ResponseParseError(const std::string& what, std::string raw_response)
        : DataError(what), raw_response(std::move(raw_response)) {}
    std::string raw_response;
};

/// Scans the response for the case-insensitive keys category:, confidence:,
/// similarities: and differences: (first occurrence wins; other lines are
/// ignored). List values split on ';' with items trimmed; empty items and
/// the literal NONE (any case) are dropped. A missing confidence defaults to
/// LOW with a recorded warning; a missing category throws
/// ResponseParseError.
RefinementResult parse_response(std::string_view text,
                                std::vector<std::string>* warnings = nullptr);

/// EXACT_MATCH -> skos:exactMatch, RELATED_TO -> skos:relatedMatch,
/// DIFFERENT -> owl:differentFrom. BROADER_THAN means subject A is broader
/// than B, so A's narrower match is B: skos:narrowMatch; NARROWER_THAN is
/// the reverse: skos:broadMatch.
std::string_view category_to_predicate(Category c);

/// HIGH -> 0.9, MEDIUM -> 0.6, LOW -> 0.3.
double confidence_to_score(Confidence c);

struct RefineConfig {
    std::string model_name = "gpt-4";
    double temperature = 0.0;
    int max_output_tokens = 500;
    /// Empty disables the response cache; the backend is then called
    /// directly.
    std::filesystem::path cache_dir;
    /// Maximum in-flight reviews.
    int parallel = 1;
    /// Keep-and-flag records on backend failure instead of aborting.
    bool lenient = false;
    std::vector<PromptExample> examples = default_examples();
};

struct RefineSummary {
    std::size_t total = 0;
    std::size_t reviewed = 0;
    std::size_t parse_failures = 0;
    std::size_t unresolved_passthrough = 0;
    std::size_t backend_failures = 0; // lenient mode only
};

struct RefineOutcome {
    MappingSet mappings;
    RefineSummary summary;
};

/// The review loop: per input record, build the prompt for its concept
/// pair, complete it, parse the response, and emit a record with the same
/// subject/object/labels, the category's predicate, the numeric confidence
/// and justification semapv:MappingReview. Output preserves input order and
/// cardinality. Records whose subject or object does not resolve pass
/// through unreviewed with a comment; parse failures keep the original
/// predicate and gain a review_failed comment. A backend failure aborts the
/// whole call unless config.lenient, which flags the record instead.
RefineOutcome refine_mappings(const MappingSet& input, const Ontology& o1,
                              const Ontology& o2, CompletionBackend& backend,
                              const RefineConfig& config,
                              std::vector<std::string>* warnings = nullptr);

} // namespace mappergpt
