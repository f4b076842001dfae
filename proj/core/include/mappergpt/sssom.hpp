#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mappergpt/errors.hpp"

namespace mappergpt {

namespace predicates {
inline constexpr std::string_view kExactMatch = "skos:exactMatch";
inline constexpr std::string_view kCloseMatch = "skos:closeMatch";
inline constexpr std::string_view kBroadMatch = "skos:broadMatch";
inline constexpr std::string_view kNarrowMatch = "skos:narrowMatch";
inline constexpr std::string_view kRelatedMatch = "skos:relatedMatch";
inline constexpr std::string_view kDifferentFrom = "owl:differentFrom";
} // namespace predicates

namespace justifications {
inline constexpr std::string_view kLexicalMatching = "semapv:LexicalMatching";
inline constexpr std::string_view kManualMappingCuration = "semapv:ManualMappingCuration";
inline constexpr std::string_view kMappingReview = "semapv:MappingReview";
} // namespace justifications

/// True for the closed predicate vocabulary accepted in mapping records.
bool is_mapping_predicate(std::string_view predicate);

/// One SSSOM row.
struct MappingRecord {
    std::string subject_id;
    std::optional<std::string> subject_label;
    std::string predicate_id;
    std::string object_id;
    std::optional<std::string> object_label;
    std::string mapping_justification;
    std::optional<double> confidence;       // [0, 1]
    std::optional<double> similarity_score; // tool-assigned, unconstrained
    std::optional<std::string> comment;

    bool operator==(const MappingRecord&) const = default;
};

/// Throws DataError when a record violates its invariants: CURIE-shaped ids,
/// predicate from the closed vocabulary, confidence in [0,1], self-maps only
/// as skos:exactMatch.
void validate(const MappingRecord& record);

/// An SSSOM document: flat metadata header plus ordered records. Invariants
/// are enforced at insertion; duplicate (subject, object, predicate) triples
/// are rejected rather than merged.
class MappingSet {
public:
    /// Appends or overwrites in place, keeping first-insertion order.
    void set_metadata(std::string key, std::string value);
    const std::vector<std::pair<std::string, std::string>>& metadata() const {
        return metadata_;
    }

    /// Validates the record and rejects duplicate triples (DataError).
    void add(MappingRecord record);

    const std::vector<MappingRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    bool operator==(const MappingSet& other) const {
        return metadata_ == other.metadata_ && records_ == other.records_;
    }

private:
    std::vector<std::pair<std::string, std::string>> metadata_;
    std::vector<MappingRecord> records_;
    std::set<std::array<std::string, 3>> triples_;
};

/// Parses SSSOM TSV: leading `#key: value` metadata lines, one tab-separated
/// column header, then data rows. Required columns: subject_id, predicate_id,
/// object_id, mapping_justification. Unknown columns are ignored with a
/// warning; empty cells become absent values. Hard errors: missing required
/// column, non-numeric number cell, duplicate triple (both row numbers).
MappingSet parse_sssom(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Canonical serialization: metadata in insertion order, the fixed 9-column
/// header, records in order. Absent optionals are empty cells; numbers carry
/// at most 4 decimals with trailing zeros trimmed. parse(write(s)) == s, and
/// write(parse(text)) == text when text is already canonical.
std::string write_sssom(const MappingSet& set);

/// Comparison key for a record. source_first keeps (subject, object);
/// otherwise the pair is sorted lexicographically, making the key invariant
/// under subject/object swap.
std::pair<std::string, std::string> canonical_key(const MappingRecord& record,
                                                  bool source_first);

MappingSet load_sssom_file(const std::filesystem::path& path,
                           std::vector<std::string>* warnings = nullptr);

/// write_sssom to disk via write_file_atomic.
void save_sssom_file(const std::filesystem::path& path, const MappingSet& set);

} // namespace mappergpt
