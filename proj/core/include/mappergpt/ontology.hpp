#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mappergpt/errors.hpp"

namespace mappergpt {

enum class SynonymScope { Exact, Broad, Narrow, Related, Unscoped };

std::string_view to_string(SynonymScope scope);

struct Synonym {
    std::string text;
    SynonymScope scope = SynonymScope::Unscoped;

    bool operator==(const Synonym&) const = default;
};

struct Relationship {
    std::string predicate; // raw tag token, e.g. "part_of"
    std::string target;    // CURIE or opaque string, kept verbatim

    bool operator==(const Relationship&) const = default;
};

/// One term of an ontology. Immutable once added to an Ontology.
struct Concept {
    std::string id;   // CURIE, prefix:local
    std::string name;
    std::optional<std::string> definition;
    std::vector<Synonym> synonyms;        // file order, no duplicate (text, scope)
    std::vector<std::string> parents;     // is_a targets, file order
    std::vector<Relationship> relationships;

    bool operator==(const Concept&) const = default;
};

/// True when s has the shape prefix:local with both sides non-empty and a
/// single colon.
bool is_curie(std::string_view s);

/// Indexed, immutable-after-construction collection of Concepts for one
/// semantic space. Safe for unrestricted concurrent reads.
class Ontology {
public:
    Ontology() = default;
    explicit Ontology(std::string source_name) : source_name_(std::move(source_name)) {}

    /// Throws DataError on an invalid id or a duplicate id.
    void add(Concept term);

    /// Lookup by CURIE; nullptr when absent. Never throws on unknown ids.
    const Concept* find(const std::string& id) const;

    std::size_t size() const { return concepts_.size(); }
    bool empty() const { return concepts_.empty(); }

    /// Concept ids in insertion (stanza) order.
    const std::vector<std::string>& ids() const { return order_; }

    const std::string& source_name() const { return source_name_; }
    void set_source_name(std::string name) { source_name_ = std::move(name); }

    bool operator==(const Ontology& other) const;

private:
    std::string source_name_;
    std::unordered_map<std::string, Concept> concepts_;
    std::vector<std::string> order_;
};

/// Parses the OBO-subset flat format.
///
/// Stanzas begin at a `[Term]` line; other stanza types are skipped.
/// Recognized tags inside a term:
///   id:            CURIE
///   name:          free text
///   def:           quoted string, trailing source brackets ignored
///   synonym:       quoted string plus optional EXACT|BROAD|NARROW|RELATED
///   is_a:          target CURIE, trailing `! label` comment stripped
///   relationship:  predicate token then target, `! label` stripped
/// Unrecognized tags are ignored. Lines before the first stanza form the
/// file header; an `ontology:` header tag fills Ontology::source_name.
///
/// A term needs both an id and a name to be kept; a missing name skips the
/// term with a recorded warning, a missing id or a duplicate id is a hard
/// error (DataError). LF and CRLF inputs are both accepted.
Ontology parse_obo(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// read_file + parse_obo; falls back to the file stem for source_name when
/// the header has no `ontology:` tag.
Ontology load_obo_file(const std::filesystem::path& path,
                       std::vector<std::string>* warnings = nullptr);

} // namespace mappergpt
