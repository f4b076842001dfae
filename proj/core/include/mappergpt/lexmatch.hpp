#pragma once

#include <string>
#include <string_view>

#include "mappergpt/ontology.hpp"
#include "mappergpt/sssom.hpp"

namespace mappergpt {

/// Case-folds (ASCII), replaces every non-alphanumeric character with a
/// space, collapses runs of spaces and trims. Multi-byte UTF-8 sequences
/// pass through unchanged and count as letters.
std::string normalize_label(std::string_view s);

/// High-recall candidate generation: emits one skos:exactMatch record for
/// every (source, target) concept pair sharing a non-empty normalized name
/// or synonym string, sorted by (subject_id, object_id). Built on an
/// inverted index from normalized string to concept ids. When a pair shares
/// several strings, the lexicographically smallest one is recorded in the
/// comment.
MappingSet lexical_match(const Ontology& source, const Ontology& target);

} // namespace mappergpt
